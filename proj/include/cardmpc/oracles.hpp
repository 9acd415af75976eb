#pragma once

#include <vector>

#include "cardmpc/cards.hpp"

namespace cardmpc {

// Reference implementations computed directly on the plaintext inputs. The
// protocol outputs are checked against these.

// 1 when all inputs are equal, 0 otherwise.
int oracle_equality(const InputVector& inputs);

// The distinct input values in increasing order.
std::vector<int> oracle_set(const InputVector& inputs);

// The number of distinct input values.
int oracle_set_size(const InputVector& inputs);

}  // namespace cardmpc
