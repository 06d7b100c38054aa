#include "chromaclust/instance_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "chromaclust/rng.hpp"

namespace chromaclust {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

constexpr const char* kFormatTag = "chromaclust/1";

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw BadSpecError("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == ',' || c == '\r') {
            if (!cur.empty()) fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) fields.push_back(std::move(cur));
    return fields;
}

double parse_double(const std::string& s, int line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') parse_fail(line, "not a number: '" + s + "'");
    return v;
}

long parse_int(const std::string& s, int line) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') parse_fail(line, "not an integer: '" + s + "'");
    return v;
}

struct LineReader {
    std::istream& in;
    int line = 0;
    bool next(std::string& out) {
        while (std::getline(in, out)) {
            ++line;
            if (!out.empty() && out.back() == '\r') out.pop_back();
            if (!out.empty()) return true;
        }
        return false;
    }
};

InstanceFile read_native(LineReader& reader) {
    InstanceFile file;
    std::string line;

    const auto expect_kv = [&](const char* key) -> long {
        if (!reader.next(line)) parse_fail(reader.line + 1, std::string("expected '") + key + "'");
        const auto f = split_fields(line);
        if (f.size() != 2 || f[0] != key)
            parse_fail(reader.line, std::string("expected '") + key + " <int>', got '" + line + "'");
        return parse_int(f[1], reader.line);
    };

    file.instance.k = static_cast<int>(expect_kv("k"));
    file.instance.d = static_cast<int>(expect_kv("d"));
    const long n = expect_kv("groups");
    if (n < 1) parse_fail(reader.line, "groups must be >= 1");

    for (long g = 0; g < n; ++g) {
        if (!reader.next(line)) parse_fail(reader.line + 1, "expected group header");
        const auto f = split_fields(line);
        if (f.size() != 3 || f[0] != "group")
            parse_fail(reader.line, "expected 'group <id> <size>', got '" + line + "'");
        ColorGroup group;
        group.id = static_cast<int>(parse_int(f[1], reader.line));
        const long size = parse_int(f[2], reader.line);
        if (size < 1 || size > file.instance.k)
            parse_fail(reader.line, "group " + f[1] + " has size " + f[2] + ", must be in [1, k=" +
                                        std::to_string(file.instance.k) + "]");
        for (long i = 0; i < size; ++i) {
            if (!reader.next(line))
                parse_fail(reader.line + 1, "group " + f[1] + ": expected a point");
            const auto coords = split_fields(line);
            if (static_cast<int>(coords.size()) != file.instance.d)
                parse_fail(reader.line,
                           "group " + f[1] + ": point has " + std::to_string(coords.size()) +
                               " coordinates, expected d=" + std::to_string(file.instance.d));
            Point p;
            for (const auto& c : coords) p.push_back(parse_double(c, reader.line));
            group.points.push_back(std::move(p));
        }
        file.instance.groups.push_back(std::move(group));
    }

    if (reader.next(line)) {
        if (line != "labels") parse_fail(reader.line, "expected 'labels' or end of file");
        file.has_labels = true;
        file.labels.resize(file.instance.groups.size());
        for (std::size_t g = 0; g < file.instance.groups.size(); ++g) {
            if (!reader.next(line)) parse_fail(reader.line + 1, "expected a labels row");
            const auto f = split_fields(line);
            if (f.size() != file.instance.groups[g].points.size() + 1)
                parse_fail(reader.line, "labels row has " + std::to_string(f.size() - 1) +
                                            " entries, expected " +
                                            std::to_string(file.instance.groups[g].points.size()));
            for (std::size_t i = 1; i < f.size(); ++i)
                file.labels[g].push_back(static_cast<int>(parse_int(f[i], reader.line)));
        }
    }

    file.instance.validate();
    return file;
}

InstanceFile read_delimited(const std::string& first_line, LineReader& reader) {
    // group_id then d coordinates per line; group order is order of first
    // appearance, k inferred as the largest group size.
    InstanceFile file;
    std::string line = first_line;
    std::vector<int> order;
    do {
        const auto f = split_fields(line);
        if (f.size() < 2) parse_fail(reader.line, "expected 'group_id coord...', got '" + line + "'");
        const int id = static_cast<int>(parse_int(f[0], reader.line));
        Point p;
        for (std::size_t i = 1; i < f.size(); ++i) p.push_back(parse_double(f[i], reader.line));
        if (file.instance.d == 0) file.instance.d = static_cast<int>(p.size());
        if (static_cast<int>(p.size()) != file.instance.d)
            parse_fail(reader.line, "point has " + std::to_string(p.size()) +
                                        " coordinates, expected " + std::to_string(file.instance.d));
        auto it = std::find(order.begin(), order.end(), id);
        if (it == order.end()) {
            order.push_back(id);
            file.instance.groups.push_back(ColorGroup{id, {}});
            it = order.end() - 1;
        }
        file.instance.groups[static_cast<std::size_t>(it - order.begin())].points.push_back(
            std::move(p));
    } while (reader.next(line));

    std::size_t kmax = 0;
    for (const auto& g : file.instance.groups) kmax = std::max(kmax, g.points.size());
    file.instance.k = std::max<int>(2, static_cast<int>(kmax));
    file.instance.validate();
    return file;
}

}  // namespace

InstanceFile read_instance(std::istream& in) {
    LineReader reader{in};
    std::string line;
    if (!reader.next(line)) parse_fail(1, "empty file");
    if (line == kFormatTag) return read_native(reader);
    return read_delimited(line, reader);
}

void write_instance(const InstanceFile& file, std::ostream& out) {
    out << kFormatTag << "\n";
    out << "k " << file.instance.k << "\n";
    out << "d " << file.instance.d << "\n";
    out << "groups " << file.instance.groups.size() << "\n";
    for (const auto& g : file.instance.groups) {
        out << "group " << g.id << " " << g.points.size() << "\n";
        for (const auto& p : g.points) {
            for (std::size_t c = 0; c < p.size(); ++c)
                out << (c ? " " : "") << fmt_double(p[c]);
            out << "\n";
        }
    }
    if (file.has_labels) {
        out << "labels\n";
        for (std::size_t g = 0; g < file.instance.groups.size(); ++g) {
            out << file.instance.groups[g].id;
            for (int l : file.labels[g]) out << " " << l;
            out << "\n";
        }
    }
}

std::string instance_to_string(const InstanceFile& file) {
    std::ostringstream out;
    write_instance(file, out);
    return out.str();
}

InstanceFile read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadSpecError("cannot open instance file: " + path);
    return read_instance(in);
}

void write_instance_file(const InstanceFile& file, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BadSpecError("cannot write instance file: " + path);
    write_instance(file, out);
}

InstanceFile generate_instance(const GenSpec& spec) {
    if (spec.k < 2) throw BadSpecError("generate: k must be >= 2");
    if (spec.n_groups < 1) throw BadSpecError("generate: need at least one group");
    if (spec.d < 1) throw BadSpecError("generate: d must be >= 1");
    if (spec.spread < 0.0 || spec.separation < 0.0)
        throw BadSpecError("generate: spread and separation must be >= 0");

    Rng rng = make_rng(derive_seed(spec.seed, "generation"));
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Gaussian cloud rescaled so the min pairwise center distance equals
    // `separation` exactly; robust in any dimension.
    std::vector<Point> centers;
    for (;;) {
        centers.assign(static_cast<std::size_t>(spec.k), Point(static_cast<std::size_t>(spec.d)));
        for (auto& c : centers)
            for (double& x : c) x = gauss(rng);
        double min_dist = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < centers.size(); ++a)
            for (std::size_t b = a + 1; b < centers.size(); ++b)
                min_dist = std::min(min_dist, distance(centers[a], centers[b]));
        if (min_dist > 1e-9) {
            const double f = spec.separation > 0.0 ? spec.separation / min_dist : 1.0;
            for (auto& c : centers)
                for (double& x : c) x *= f;
            break;
        }
    }

    InstanceFile file;
    file.instance.k = spec.k;
    file.instance.d = spec.d;
    file.has_labels = true;
    std::uniform_int_distribution<int> size_dist(1, spec.k);
    for (int g = 0; g < spec.n_groups; ++g) {
        const int ki = spec.full ? spec.k : size_dist(rng);
        // k_i distinct cluster slots per group.
        std::vector<int> slots(static_cast<std::size_t>(spec.k));
        for (int s = 0; s < spec.k; ++s) slots[static_cast<std::size_t>(s)] = s;
        std::shuffle(slots.begin(), slots.end(), rng);
        slots.resize(static_cast<std::size_t>(ki));
        std::sort(slots.begin(), slots.end());

        ColorGroup group;
        group.id = g;
        std::vector<int> labels;
        for (int s : slots) {
            Point p = centers[static_cast<std::size_t>(s)];
            for (double& x : p) x += spec.spread * gauss(rng);
            group.points.push_back(std::move(p));
            labels.push_back(s);
        }
        file.instance.groups.push_back(std::move(group));
        file.labels.push_back(std::move(labels));
    }
    file.instance.validate();
    return file;
}

}  // namespace chromaclust
