#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cardmpc/cards.hpp"
#include "cardmpc/errors.hpp"

namespace cardmpc {

// Column permutation in destination form: dest()[i-1] is the column where
// source column i lands.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> dest);
  static Permutation identity(int k);
  static Permutation cyclic(int k, int r);

  int size() const { return static_cast<int>(dest_.size()); }
  const std::vector<int>& dest() const { return dest_; }
  Permutation inverse() const;
  // Advances dest() to the next permutation in lexicographic order. Returns
  // false once it wraps back around to the identity.
  bool next_lexicographic();

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> dest_;
};

// out[dest(i)] = in[i] for every source position i.
template <typename T>
std::vector<T> apply_to(const Permutation& p, const std::vector<T>& v) {
  if (v.size() != static_cast<std::size_t>(p.size()))
    throw DomainError("permutation of size " + std::to_string(p.size()) +
                      " applied to vector of size " + std::to_string(v.size()));
  std::vector<T> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<std::size_t>(p.dest()[i] - 1)] = v[i];
  return out;
}

enum class ShuffleKind : std::uint8_t { Scramble, Shift };

const char* shuffle_kind_name(ShuffleKind kind);

// One resolved shuffle outcome. A scramble carries an arbitrary column map;
// a shift is restricted to a cyclic rotation and also remembers the amount.
struct ShuffleDecision {
  ShuffleKind kind = ShuffleKind::Scramble;
  Permutation column_map;
  int rotation = 0;  // meaningful for Shift only

  static ShuffleDecision scramble(Permutation p);
  static ShuffleDecision shift(int k, int r);

  friend bool operator==(const ShuffleDecision&, const ShuffleDecision&) = default;
};

// Requires every card face-down: a pile shuffle with exposed faces would leak
// the chosen permutation.
void apply_shuffle(CardMatrix& m, const ShuffleDecision& d);

// A slot in a protocol's shuffle plan: which shuffle family, over how many
// columns.
struct TapeSlot {
  ShuffleKind kind = ShuffleKind::Scramble;
  int k = 2;

  friend bool operator==(const TapeSlot&, const TapeSlot&) = default;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);
std::uint64_t saturating_factorial(std::uint64_t n);

// Number of equally likely outcomes of one slot: k! for a scramble, k for a
// shift. Saturates at UINT64_MAX.
std::uint64_t slot_outcomes(const TapeSlot& slot);
std::uint64_t universe_size(const std::vector<TapeSlot>& plan);

// Supplies shuffle outcomes to a protocol run.
class DecisionSource {
 public:
  virtual ~DecisionSource() = default;
  virtual ShuffleDecision next(ShuffleKind kind, int k) = 0;
};

// Pseudorandom source with uniform draws (rejection sampling, so no modulo
// bias) and Fisher-Yates scrambles. Same seed, same decisions.
class SeededSource final : public DecisionSource {
 public:
  explicit SeededSource(std::uint64_t seed) : rng_(seed) {}
  ShuffleDecision next(ShuffleKind kind, int k) override;

 private:
  std::uint64_t uniform_below(std::uint64_t n);
  std::mt19937_64 rng_;
};

// Replays a fixed list of decisions. Any mismatch between what the protocol
// asks for and what the tape holds is a TapeError.
class RandomnessTape final : public DecisionSource {
 public:
  RandomnessTape() = default;
  explicit RandomnessTape(std::vector<ShuffleDecision> decisions);

  ShuffleDecision next(ShuffleKind kind, int k) override;
  void rewind() { cursor_ = 0; }
  bool exhausted() const { return cursor_ == decisions_.size(); }
  const std::vector<ShuffleDecision>& decisions() const { return decisions_; }

 private:
  std::vector<ShuffleDecision> decisions_;
  std::size_t cursor_ = 0;
};

// Walks every tape a shuffle plan admits, in lexicographic order (scrambles
// by destination vector, shifts by rotation; the last slot varies fastest).
class TapeEnumerator {
 public:
  explicit TapeEnumerator(std::vector<TapeSlot> plan);

  std::uint64_t universe() const { return universe_; }
  RandomnessTape tape() const { return RandomnessTape(current_); }
  const std::vector<ShuffleDecision>& decisions() const { return current_; }
  // Steps to the next tape; false once every tape has been visited.
  bool advance();

 private:
  std::vector<TapeSlot> plan_;
  std::vector<ShuffleDecision> current_;
  std::uint64_t universe_ = 1;
};

}  // namespace cardmpc
