#include "cardmpc/invariants.hpp"

#include <algorithm>
#include <string>

namespace cardmpc {

InvariantMonitor::InvariantMonitor(Protocol p, const InputVector& inputs)
    : protocol_(p),
      k_(inputs.k()),
      n_(inputs.n()),
      expected_clubs_(p == Protocol::Set ? inputs.n() + 1 : inputs.n()) {}

void InvariantMonitor::require(bool ok, const std::string& what) {
  ++checks_;
  if (!ok) throw InvariantViolation(what);
}

std::vector<int> InvariantMonitor::row1_club_labels(const CardMatrix& m) const {
  std::vector<int> out;
  for (int pos = 1; pos <= k_; ++pos)
    if (m.at(1, pos).suit == Suit::Club)
      out.push_back(labels_[static_cast<std::size_t>(pos - 1)]);
  std::sort(out.begin(), out.end());
  return out;
}

void InvariantMonitor::check_step(const CardMatrix& m, const char* where) {
  const int rows = protocol_ == Protocol::Set ? n_ + 1 : n_;
  require(m.rows() == rows && m.cols() == k_,
          std::string("matrix reshaped after ") + where + ": " + std::to_string(m.rows()) + "x" +
              std::to_string(m.cols()));
  const int clubs = m.count_suit(Suit::Club);
  require(clubs == expected_clubs_, std::string("conservation broken after ") + where + ": " +
                                        std::to_string(clubs) + " Clubs, expected " +
                                        std::to_string(expected_clubs_));
  if (protocol_ == Protocol::Equality) {
    const int hearts = m.row_count_suit(1, Suit::Heart);
    require(hearts >= row1_hearts_, std::string("row-1 Hearts decreased after ") + where + ": " +
                                        std::to_string(hearts) + " < " +
                                        std::to_string(row1_hearts_));
    row1_hearts_ = hearts;
  } else {
    std::vector<int> cur = row1_club_labels(m);
    require(std::includes(cur.begin(), cur.end(), club_labels_.begin(), club_labels_.end()),
            std::string("a row-1 Club vanished after ") + where);
    club_labels_ = std::move(cur);
  }
}

void InvariantMonitor::on_build(const CardMatrix& m) {
  labels_.resize(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i) labels_[static_cast<std::size_t>(i)] = i + 1;
  row1_hearts_ = m.row_count_suit(1, Suit::Heart);
  club_labels_ = row1_club_labels(m);
  for (int r = 1; r <= m.rows(); ++r)
    require(m.row_all_facing(r, Facing::FaceDown), "built matrix has face-up cards");
  check_step(m, "build");
}

void InvariantMonitor::on_shuffle(const CardMatrix& m, const ShuffleDecision& d) {
  labels_ = apply_to(d.column_map, labels_);
  check_step(m, "shuffle");
}

void InvariantMonitor::on_reveal(const CardMatrix& m, const RevealEvent& e) {
  require(m.row_all_facing(e.row, Facing::FaceUp),
          "revealed row " + std::to_string(e.row) + " is not fully face-up");
  require(e.pattern == m.row_pattern(e.row),
          "transcript pattern disagrees with the matrix at row " + std::to_string(e.row));
  if (e.row >= 2) {
    const auto clubs = std::count(e.pattern.begin(), e.pattern.end(), 'C');
    require(clubs == 1, "row " + std::to_string(e.row) + " revealed " + std::to_string(clubs) +
                            " Clubs, expected exactly 1");
  }
  check_step(m, "reveal");
}

void InvariantMonitor::on_overwrite(const CardMatrix& m, int, Suit) {
  check_step(m, "overwrite");
}

void InvariantMonitor::on_flip_down(const CardMatrix& m) {
  for (int r = 1; r <= m.rows(); ++r)
    require(m.row_all_facing(r, Facing::FaceDown),
            "face-up cards remain after the flip-down step");
  check_step(m, "flip-down");
}

void InvariantMonitor::on_realign(const CardMatrix& m, int rotation) {
  require(protocol_ == Protocol::Set, "realignment outside the set protocol");
  labels_ = apply_to(Permutation::cyclic(k_, rotation), labels_);
  for (int i = 0; i < k_; ++i)
    require(labels_[static_cast<std::size_t>(i)] == i + 1,
            "realignment did not restore the original column order");
  realigned_ = true;
  check_step(m, "realign");
}

void InvariantMonitor::finish(const ProtocolRun& run) {
  require(run.shuffles_used == n_, "run used " + std::to_string(run.shuffles_used) +
                                       " shuffles, expected " + std::to_string(n_));
  require(static_cast<int>(run.tape.size()) == n_, "tape record disagrees with shuffle count");
  const int expected_events = protocol_ == Protocol::Set ? n_ + 1 : n_;
  require(static_cast<int>(run.transcript.events.size()) == expected_events,
          "transcript has " + std::to_string(run.transcript.events.size()) +
              " reveals, expected " + std::to_string(expected_events));
  const std::string& final_pattern = run.transcript.events.back().pattern;
  const auto clubs = static_cast<int>(std::count(final_pattern.begin(), final_pattern.end(), 'C'));
  switch (protocol_) {
    case Protocol::Equality:
      require(clubs == 0 || clubs == 1, "final row 1 shows " + std::to_string(clubs) +
                                            " Clubs, expected all Hearts or exactly one Club");
      require(run.output == std::vector<int>{clubs == 1 ? 1 : 0},
              "equality output disagrees with the final reveal");
      break;
    case Protocol::SetSize:
      require(run.output == std::vector<int>{clubs},
              "set-size output disagrees with the final reveal");
      break;
    case Protocol::Set: {
      require(realigned_, "set run finished without a realignment");
      std::vector<int> members;
      for (int j = 0; j < k_; ++j)
        if (final_pattern[static_cast<std::size_t>(j)] == 'C') members.push_back(j);
      require(run.output == members, "set output disagrees with the final reveal");
      break;
    }
  }
}

}  // namespace cardmpc
