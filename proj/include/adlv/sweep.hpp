#ifndef ADLV_SWEEP_HPP_
#define ADLV_SWEEP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adlv/adlv.hpp"

namespace adlv {

enum class SweepCheck { kNone, kGhkr, kUpper, kPathIndependence };

SweepCheck parse_sweep_check(const std::string& s);
std::string to_string(SweepCheck c);

struct SweepOptions {
  std::size_t max_length = 4;
  std::string b_set = "unit";  // unit | basic-all | straight-all | <b>
  SweepCheck check = SweepCheck::kNone;
  std::size_t trials = 3;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct SweepRow {
  std::string w;
  std::string b;
  std::string dim;      // integer or EMPTY, "-" when not computed
  std::string vdim;     // virtual dimension, "-" when not computed
  std::string defect;
  std::string status;   // ok | VIOLATION | skipped | n/a
  std::string note;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t checked = 0;     // pairs where the check applied
  std::size_t violations = 0;
  std::size_t skipped = 0;     // pairs without a usable defect
};

// The b-set given by name: unit, basic-all, straight-all or a single b.
// straight-all takes the straight classes of length at most bound.
std::vector<BElement> resolve_b_set(const AdlvEngine& a, const std::string& name,
                                    std::size_t bound);

// Defect used by the bound checks: defect_basic for basic b, 0 for regular
// Newton point with delta = id, otherwise nullopt.
std::optional<std::int64_t> sweep_defect(const AdlvEngine& a, const BElement& b);

// Runs the check over every w with l(w) <= max_length (and every b in the set
// with matching Kottwitz class). Rows come out in (length, reduced word, b)
// order regardless of the thread count.
SweepResult run_sweep(const AdlvEngine& a, const SweepOptions& opt);

}  // namespace adlv

#endif  // ADLV_SWEEP_HPP_
