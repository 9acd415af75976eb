#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cardmpc/errors.hpp"

namespace cardmpc {

enum class Suit : std::uint8_t { Club, Heart };
enum class Facing : std::uint8_t { FaceDown, FaceUp };

char suit_char(Suit s);  // 'C' or 'H'
Suit suit_from_char(char c);

struct Card {
  Suit suit = Suit::Heart;
  Facing facing = Facing::FaceDown;
  friend bool operator==(const Card&, const Card&) = default;
};

// A row of k cards. An encoding holds exactly one Club; the Club sitting at
// position i+1 (1-based) commits the value i.
struct Sequence {
  std::vector<Card> cards;

  int size() const { return static_cast<int>(cards.size()); }
  std::string pattern() const;  // suits left to right, e.g. "HCHH"
};

Sequence encode(int value, int k);
int decode(const Sequence& s);
Sequence sequence_from_pattern(std::string_view pattern);

// Player values a_1..a_n, each in {0..k-1}. k >= 2, n >= 1.
class InputVector {
 public:
  InputVector(std::vector<int> values, int k);

  int k() const { return k_; }
  int n() const { return static_cast<int>(values_.size()); }
  const std::vector<int>& values() const { return values_; }

  friend bool operator==(const InputVector&, const InputVector&) = default;

 private:
  std::vector<int> values_;
  int k_;
};

// Row-major grid of cards. Rows and columns are addressed 1-based, matching
// how positions appear in traces and error messages.
class CardMatrix {
 public:
  CardMatrix() = default;
  CardMatrix(int rows, int cols, Card fill = Card{});

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Card& at(int row, int col);
  const Card& at(int row, int col) const;

  std::string row_pattern(int row) const;
  int count_suit(Suit s) const;
  int row_count_suit(int row, Suit s) const;
  bool row_all_facing(int row, Facing f) const;

  void turn_row(int row, Facing f);
  void turn_all_face_down();

  // Move column i to column dest[i-1] for every i, columns travel as piles.
  // dest must be a bijection on {1..cols}.
  void rearrange_columns(const std::vector<int>& dest);

  friend bool operator==(const CardMatrix&, const CardMatrix&) = default;

 private:
  void check_cell(int row, int col) const;

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Card> grid_;
};

// n x k matrix with row i = encode(a_i); with extra_zero_row, an (n+1) x k
// matrix whose last row encodes 0. All cards start face-down.
CardMatrix build_matrix(const InputVector& inputs, bool extra_zero_row);

// All k^n input vectors in lexicographic order (a_1 most significant).
std::vector<InputVector> all_input_vectors(int k, int n);

}  // namespace cardmpc
