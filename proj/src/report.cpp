#include "chromaclust/report.hpp"

#include <ostream>
#include <sstream>

#include "chromaclust/instance_io.hpp"

namespace chromaclust {

void write_report(const SolveReport& report, const Instance& inst, std::ostream& out,
                  bool include_timing) {
    out << "chromaclust-report/1\n";
    out << "algorithm " << report.algorithm << "\n";
    out << "objective_kind " << objective_name(report.kind) << "\n";
    out << "objective " << fmt_double(report.objective) << "\n";
    out << "seed " << report.seed << "\n";
    out << "heuristic " << (report.heuristic ? 1 : 0) << "\n";
    if (include_timing) out << "elapsed_seconds " << fmt_double(report.elapsed_seconds) << "\n";
    if (!report.config_echo.empty()) out << "config " << report.config_echo << "\n";
    out << "centers " << report.centers.size() << " "
        << (report.centers.empty() ? 0 : report.centers.front().size()) << "\n";
    for (const Point& c : report.centers) {
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << fmt_double(c[i]);
        out << "\n";
    }
    out << "assignments " << report.partition.labels.size() << "\n";
    for (std::size_t g = 0; g < report.partition.labels.size(); ++g) {
        out << inst.groups[g].id;
        for (int l : report.partition.labels[g]) out << " " << l;
        out << "\n";
    }
    out << "end\n";
}

std::string report_to_string(const SolveReport& report, const Instance& inst,
                             bool include_timing) {
    std::ostringstream out;
    write_report(report, inst, out, include_timing);
    return out.str();
}

double recompute_report_objective(const SolveReport& report, const Instance& inst) {
    return objective_value(inst, report.centers, report.partition, report.kind);
}

std::string bench_header() {
    return "instance\talgorithm\tseed\tobjective\tratio\ttime_s";
}

std::string bench_row(const std::string& instance_name, const std::string& algorithm,
                      std::uint64_t seed, double objective, double ratio, bool ratio_known,
                      double time_s) {
    std::ostringstream out;
    out << instance_name << "\t" << algorithm << "\t" << seed << "\t" << fmt_double(objective)
        << "\t" << (ratio_known ? fmt_double(ratio) : std::string("n/a")) << "\t"
        << fmt_double(time_s);
    return out.str();
}

}  // namespace chromaclust
