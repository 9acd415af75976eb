#include "cardmpc/oracles.hpp"

#include <algorithm>

namespace cardmpc {

int oracle_equality(const InputVector& inputs) {
  const std::vector<int>& v = inputs.values();
  return std::all_of(v.begin(), v.end(), [&](int x) { return x == v.front(); }) ? 1 : 0;
}

std::vector<int> oracle_set(const InputVector& inputs) {
  std::vector<int> out = inputs.values();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int oracle_set_size(const InputVector& inputs) {
  return static_cast<int>(oracle_set(inputs).size());
}

}  // namespace cardmpc
