#include "cardmpc/cards.hpp"

#include <algorithm>
#include <utility>

namespace cardmpc {

char suit_char(Suit s) { return s == Suit::Club ? 'C' : 'H'; }

Suit suit_from_char(char c) {
  if (c == 'C') return Suit::Club;
  if (c == 'H') return Suit::Heart;
  throw DomainError(std::string("unknown suit character '") + c + "', expected 'C' or 'H'");
}

std::string Sequence::pattern() const {
  std::string out;
  out.reserve(cards.size());
  for (const Card& c : cards) out.push_back(suit_char(c.suit));
  return out;
}

Sequence encode(int value, int k) {
  if (k < 2) throw DomainError("encode: k must be at least 2, got " + std::to_string(k));
  if (value < 0 || value >= k)
    throw DomainError("encode: value " + std::to_string(value) + " outside {0.." +
                      std::to_string(k - 1) + "}");
  Sequence s;
  s.cards.assign(static_cast<std::size_t>(k), Card{Suit::Heart, Facing::FaceDown});
  s.cards[static_cast<std::size_t>(value)].suit = Suit::Club;
  return s;
}

int decode(const Sequence& s) {
  int clubs = 0;
  int pos = -1;
  for (int i = 0; i < s.size(); ++i) {
    if (s.cards[static_cast<std::size_t>(i)].suit == Suit::Club) {
      ++clubs;
      pos = i;
    }
  }
  if (clubs != 1)
    throw MalformedSequenceError("decode: sequence \"" + s.pattern() + "\" has " +
                                 std::to_string(clubs) + " Clubs, expected exactly 1");
  return pos;
}

Sequence sequence_from_pattern(std::string_view pattern) {
  Sequence s;
  s.cards.reserve(pattern.size());
  for (char c : pattern) s.cards.push_back(Card{suit_from_char(c), Facing::FaceDown});
  return s;
}

InputVector::InputVector(std::vector<int> values, int k) : values_(std::move(values)), k_(k) {
  if (k_ < 2) throw DomainError("k must be at least 2, got " + std::to_string(k_));
  if (values_.empty()) throw DomainError("at least one input value is required");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0 || values_[i] >= k_)
      throw DomainError("input " + std::to_string(i + 1) + " is " + std::to_string(values_[i]) +
                        ", outside {0.." + std::to_string(k_ - 1) + "}");
  }
}

CardMatrix::CardMatrix(int rows, int cols, Card fill) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1)
    throw DomainError("matrix dimensions must be positive, got " + std::to_string(rows) + "x" +
                      std::to_string(cols));
  grid_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

void CardMatrix::check_cell(int row, int col) const {
  if (row < 1 || row > rows_ || col < 1 || col > cols_)
    throw DomainError("matrix cell (" + std::to_string(row) + "," + std::to_string(col) +
                      ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
}

Card& CardMatrix::at(int row, int col) {
  check_cell(row, col);
  return grid_[static_cast<std::size_t>(row - 1) * cols_ + (col - 1)];
}

const Card& CardMatrix::at(int row, int col) const {
  check_cell(row, col);
  return grid_[static_cast<std::size_t>(row - 1) * cols_ + (col - 1)];
}

std::string CardMatrix::row_pattern(int row) const {
  check_cell(row, 1);
  std::string out;
  out.reserve(static_cast<std::size_t>(cols_));
  const Card* base = &grid_[static_cast<std::size_t>(row - 1) * cols_];
  for (int c = 0; c < cols_; ++c) out.push_back(suit_char(base[c].suit));
  return out;
}

int CardMatrix::count_suit(Suit s) const {
  return static_cast<int>(
      std::count_if(grid_.begin(), grid_.end(), [&](const Card& c) { return c.suit == s; }));
}

int CardMatrix::row_count_suit(int row, Suit s) const {
  check_cell(row, 1);
  const Card* base = &grid_[static_cast<std::size_t>(row - 1) * cols_];
  int n = 0;
  for (int c = 0; c < cols_; ++c) n += base[c].suit == s;
  return n;
}

bool CardMatrix::row_all_facing(int row, Facing f) const {
  check_cell(row, 1);
  const Card* base = &grid_[static_cast<std::size_t>(row - 1) * cols_];
  for (int c = 0; c < cols_; ++c)
    if (base[c].facing != f) return false;
  return true;
}

void CardMatrix::turn_row(int row, Facing f) {
  check_cell(row, 1);
  Card* base = &grid_[static_cast<std::size_t>(row - 1) * cols_];
  for (int c = 0; c < cols_; ++c) base[c].facing = f;
}

void CardMatrix::turn_all_face_down() {
  for (Card& c : grid_) c.facing = Facing::FaceDown;
}

void CardMatrix::rearrange_columns(const std::vector<int>& dest) {
  if (static_cast<int>(dest.size()) != cols_)
    throw DomainError("column map has " + std::to_string(dest.size()) + " entries for a " +
                      std::to_string(cols_) + "-column matrix");
  std::uint64_t seen = 0;  // cols_ <= 64 in any enumerable setting
  std::vector<bool> seen_wide;
  if (cols_ > 64) seen_wide.assign(static_cast<std::size_t>(cols_), false);
  for (int d : dest) {
    if (d < 1 || d > cols_)
      throw DomainError("column destination " + std::to_string(d) + " outside {1.." +
                        std::to_string(cols_) + "}");
    if (cols_ <= 64) {
      const std::uint64_t bit = 1ULL << (d - 1);
      if (seen & bit) throw DomainError("column map is not a bijection on {1.." +
                                        std::to_string(cols_) + "}");
      seen |= bit;
    } else {
      if (seen_wide[static_cast<std::size_t>(d - 1)])
        throw DomainError("column map is not a bijection on {1.." + std::to_string(cols_) + "}");
      seen_wide[static_cast<std::size_t>(d - 1)] = true;
    }
  }
  std::vector<Card> next(grid_.size());
  for (int r = 0; r < rows_; ++r) {
    const Card* src = &grid_[static_cast<std::size_t>(r) * cols_];
    Card* dst = &next[static_cast<std::size_t>(r) * cols_];
    for (int c = 0; c < cols_; ++c) dst[dest[static_cast<std::size_t>(c)] - 1] = src[c];
  }
  grid_ = std::move(next);
}

CardMatrix build_matrix(const InputVector& inputs, bool extra_zero_row) {
  const int n = inputs.n();
  const int k = inputs.k();
  CardMatrix m(extra_zero_row ? n + 1 : n, k);
  for (int i = 1; i <= n; ++i) {
    Sequence row = encode(inputs.values()[static_cast<std::size_t>(i - 1)], k);
    for (int j = 1; j <= k; ++j) m.at(i, j) = row.cards[static_cast<std::size_t>(j - 1)];
  }
  if (extra_zero_row) {
    Sequence row = encode(0, k);
    for (int j = 1; j <= k; ++j) m.at(n + 1, j) = row.cards[static_cast<std::size_t>(j - 1)];
  }
  return m;
}

std::vector<InputVector> all_input_vectors(int k, int n) {
  if (k < 2) throw DomainError("k must be at least 2, got " + std::to_string(k));
  if (n < 1) throw DomainError("n must be at least 1, got " + std::to_string(n));
  std::vector<InputVector> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.emplace_back(cur, k);
    int pos = n - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == k - 1) {
      cur[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++cur[static_cast<std::size_t>(pos)];
  }
  return out;
}

}  // namespace cardmpc
