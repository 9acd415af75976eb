#include "cardmpc/shuffle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

namespace cardmpc {

namespace {

void check_dest(const std::vector<int>& dest) {
  const int k = static_cast<int>(dest.size());
  if (k < 1) throw DomainError("permutation must have at least one entry");
  std::vector<bool> seen(dest.size(), false);
  for (int d : dest) {
    if (d < 1 || d > k)
      throw DomainError("permutation entry " + std::to_string(d) + " outside {1.." +
                        std::to_string(k) + "}");
    if (seen[static_cast<std::size_t>(d - 1)])
      throw DomainError("permutation repeats destination " + std::to_string(d));
    seen[static_cast<std::size_t>(d - 1)] = true;
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> dest) : dest_(std::move(dest)) { check_dest(dest_); }

Permutation Permutation::identity(int k) {
  if (k < 1) throw DomainError("permutation size must be positive, got " + std::to_string(k));
  std::vector<int> dest(static_cast<std::size_t>(k));
  std::iota(dest.begin(), dest.end(), 1);
  Permutation p;
  p.dest_ = std::move(dest);
  return p;
}

Permutation Permutation::cyclic(int k, int r) {
  if (k < 1) throw DomainError("permutation size must be positive, got " + std::to_string(k));
  if (r < 0 || r >= k)
    throw DomainError("rotation " + std::to_string(r) + " outside {0.." + std::to_string(k - 1) +
                      "}");
  std::vector<int> dest(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) dest[static_cast<std::size_t>(i)] = (i + r) % k + 1;
  Permutation p;
  p.dest_ = std::move(dest);
  return p;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.dest_.resize(dest_.size());
  for (std::size_t i = 0; i < dest_.size(); ++i)
    inv.dest_[static_cast<std::size_t>(dest_[i] - 1)] = static_cast<int>(i) + 1;
  return inv;
}

bool Permutation::next_lexicographic() { return std::next_permutation(dest_.begin(), dest_.end()); }

const char* shuffle_kind_name(ShuffleKind kind) {
  return kind == ShuffleKind::Scramble ? "scramble" : "shift";
}

ShuffleDecision ShuffleDecision::scramble(Permutation p) {
  ShuffleDecision d;
  d.kind = ShuffleKind::Scramble;
  d.column_map = std::move(p);
  d.rotation = 0;
  return d;
}

ShuffleDecision ShuffleDecision::shift(int k, int r) {
  ShuffleDecision d;
  d.kind = ShuffleKind::Shift;
  d.column_map = Permutation::cyclic(k, r);
  d.rotation = r;
  return d;
}

void apply_shuffle(CardMatrix& m, const ShuffleDecision& d) {
  if (d.column_map.size() != m.cols())
    throw DomainError("shuffle over " + std::to_string(d.column_map.size()) +
                      " columns applied to a " + std::to_string(m.cols()) + "-column matrix");
  for (int r = 1; r <= m.rows(); ++r)
    if (!m.row_all_facing(r, Facing::FaceDown))
      throw ProtocolStateError("shuffle applied while row " + std::to_string(r) +
                               " has face-up cards");
  m.rearrange_columns(d.column_map.dest());
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (b != 0 && a > kMax / b) return kMax;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

std::uint64_t saturating_factorial(std::uint64_t n) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 2; i <= n; ++i) out = saturating_mul(out, i);
  return out;
}

std::uint64_t slot_outcomes(const TapeSlot& slot) {
  if (slot.k < 1) throw DomainError("shuffle slot must cover at least one column");
  return slot.kind == ShuffleKind::Scramble ? saturating_factorial(static_cast<std::uint64_t>(slot.k))
                                            : static_cast<std::uint64_t>(slot.k);
}

std::uint64_t universe_size(const std::vector<TapeSlot>& plan) {
  std::uint64_t out = 1;
  for (const TapeSlot& slot : plan) out = saturating_mul(out, slot_outcomes(slot));
  return out;
}

std::uint64_t SeededSource::uniform_below(std::uint64_t n) {
  // Reject the low band so the surviving range is a whole multiple of n.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng_();
    if (r >= threshold) return r % n;
  }
}

ShuffleDecision SeededSource::next(ShuffleKind kind, int k) {
  if (k < 1) throw DomainError("shuffle must cover at least one column");
  if (kind == ShuffleKind::Shift)
    return ShuffleDecision::shift(k, static_cast<int>(uniform_below(static_cast<std::uint64_t>(k))));
  std::vector<int> dest(static_cast<std::size_t>(k));
  std::iota(dest.begin(), dest.end(), 1);
  for (int i = k - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(dest[static_cast<std::size_t>(i)], dest[j]);
  }
  return ShuffleDecision::scramble(Permutation(std::move(dest)));
}

RandomnessTape::RandomnessTape(std::vector<ShuffleDecision> decisions)
    : decisions_(std::move(decisions)) {}

ShuffleDecision RandomnessTape::next(ShuffleKind kind, int k) {
  if (cursor_ >= decisions_.size())
    throw TapeError("tape exhausted: decision " + std::to_string(cursor_ + 1) +
                    " requested but the tape has " + std::to_string(decisions_.size()) +
                    " entries");
  const ShuffleDecision& d = decisions_[cursor_];
  if (d.kind != kind)
    throw TapeError("tape entry " + std::to_string(cursor_ + 1) + " is a " +
                    shuffle_kind_name(d.kind) + " but a " + shuffle_kind_name(kind) +
                    " was requested");
  if (d.column_map.size() != k)
    throw TapeError("tape entry " + std::to_string(cursor_ + 1) + " covers " +
                    std::to_string(d.column_map.size()) + " columns but " + std::to_string(k) +
                    " were requested");
  ++cursor_;
  return d;
}

TapeEnumerator::TapeEnumerator(std::vector<TapeSlot> plan) : plan_(std::move(plan)) {
  universe_ = universe_size(plan_);
  current_.reserve(plan_.size());
  for (const TapeSlot& slot : plan_) {
    current_.push_back(slot.kind == ShuffleKind::Scramble
                           ? ShuffleDecision::scramble(Permutation::identity(slot.k))
                           : ShuffleDecision::shift(slot.k, 0));
  }
}

bool TapeEnumerator::advance() {
  for (std::size_t i = current_.size(); i-- > 0;) {
    ShuffleDecision& d = current_[i];
    if (d.kind == ShuffleKind::Shift) {
      if (d.rotation + 1 < plan_[i].k) {
        d = ShuffleDecision::shift(plan_[i].k, d.rotation + 1);
        return true;
      }
      d = ShuffleDecision::shift(plan_[i].k, 0);
    } else {
      if (d.column_map.next_lexicographic()) return true;
      // next_lexicographic wrapped the map back to the identity; carry on.
    }
  }
  return false;
}

}  // namespace cardmpc
