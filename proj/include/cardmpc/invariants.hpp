#pragma once

#include <cstdint>
#include <vector>

#include "cardmpc/protocol.hpp"

namespace cardmpc {

// Watches one run through the StepObserver hooks and throws
// InvariantViolation the moment a protocol law breaks. Unlike the public
// transcript, the monitor inspects hidden card state: it is a verification
// instrument, not a party to the protocol.
//
// Checked at every step: suit conservation; row-1 Hearts never decreasing
// (equality); row-1 Clubs sticky by original column (set-size, set); exactly
// one Club in every loop-row and marker-row reveal. Checked once: the set
// realignment restores the original column order, and finish() audits the
// shuffle and reveal accounting against the run record.
class InvariantMonitor final : public StepObserver {
 public:
  InvariantMonitor(Protocol p, const InputVector& inputs);

  void on_build(const CardMatrix& m) override;
  void on_shuffle(const CardMatrix& m, const ShuffleDecision& d) override;
  void on_reveal(const CardMatrix& m, const RevealEvent& e) override;
  void on_overwrite(const CardMatrix& m, int row, Suit target) override;
  void on_flip_down(const CardMatrix& m) override;
  void on_realign(const CardMatrix& m, int rotation) override;

  // End-of-run accounting; call with the finished run this monitor observed.
  void finish(const ProtocolRun& run);

  // Individual assertions evaluated so far; lets tests prove the monitor ran.
  std::uint64_t checks() const { return checks_; }

 private:
  void require(bool ok, const std::string& what);
  void check_step(const CardMatrix& m, const char* where);
  std::vector<int> row1_club_labels(const CardMatrix& m) const;

  Protocol protocol_;
  int k_;
  int n_;
  int expected_clubs_;
  std::vector<int> labels_;  // labels_[pos-1] = original index of the column now at pos
  int row1_hearts_ = -1;
  std::vector<int> club_labels_;  // sorted original columns whose row-1 card is a Club
  bool realigned_ = false;
  std::uint64_t checks_ = 0;
};

}  // namespace cardmpc
