#pragma once

#include <iosfwd>
#include <string>

#include "chromaclust/geometry.hpp"

namespace chromaclust {

// Structured text report, format tag "chromaclust-report/1". When
// include_timing is false the elapsed line is omitted, which makes
// fixed-seed reports byte-identical across executions.
void write_report(const SolveReport& report, const Instance& inst, std::ostream& out,
                  bool include_timing = true);
std::string report_to_string(const SolveReport& report, const Instance& inst,
                             bool include_timing = true);

// Recomputes the objective from the report's own centers and assignments;
// used for the self-consistency checks.
double recompute_report_objective(const SolveReport& report, const Instance& inst);

// Tab-delimited bench rows: instance, algorithm, seed, objective, ratio
// ("n/a" when the oracle is out of reach), time_s.
std::string bench_header();
std::string bench_row(const std::string& instance_name, const std::string& algorithm,
                      std::uint64_t seed, double objective, double ratio, bool ratio_known,
                      double time_s);

}  // namespace chromaclust
