#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chromaclust/geometry.hpp"

namespace chromaclust {

// On-disk instance, format tag "chromaclust/1". Ground-truth labels are
// optional (recorded by the generator, ignored by solvers).
struct InstanceFile {
    Instance instance;
    bool has_labels = false;
    std::vector<std::vector<int>> labels;  // planted cluster per point
};

struct GenSpec {
    int k = 2;
    int n_groups = 4;
    int d = 2;
    double spread = 0.5;      // sigma of the per-cluster noise
    double separation = 8.0;  // min pairwise distance of planted centers
    bool full = true;         // k_i = k for all groups; else random k_i <= k
    std::uint64_t seed = 0;
};

// Plants k centers at exact min pairwise distance `separation`, then draws
// each group's points near k_i distinct centers. Deterministic per seed.
InstanceFile generate_instance(const GenSpec& spec);

void write_instance(const InstanceFile& file, std::ostream& out);
std::string instance_to_string(const InstanceFile& file);

// Parses the native format; errors carry 1-based line numbers. Also accepts
// delimited text (one point per line: group_id followed by d coordinates,
// separated by whitespace or commas; k inferred as the largest group size).
InstanceFile read_instance(std::istream& in);
InstanceFile read_instance_file(const std::string& path);
void write_instance_file(const InstanceFile& file, const std::string& path);

// %.17g rendering used by all writers, round-trip exact.
std::string fmt_double(double x);

}  // namespace chromaclust
