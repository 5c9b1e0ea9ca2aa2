#include "expertkm/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "expertkm/errors.hpp"

namespace expertkm {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    out.push_back(field);
    return out;
}

[[noreturn]] void cell_error(const std::string& what, const std::string& column, std::size_t row) {
    throw ValidationError(what + " in column '" + column + "' at data row " +
                          std::to_string(row));
}

double parse_real(const std::string& field, const std::string& column, std::size_t row) {
    if (field.empty()) cell_error("empty value", column, row);
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) cell_error("unparseable value '" + field + "'", column, row);
    return v;
}

std::int64_t parse_integer(const std::string& field, const std::string& column, std::size_t row) {
    if (field.empty()) cell_error("empty value", column, row);
    char* end = nullptr;
    const long long v = std::strtoll(field.c_str(), &end, 10);
    if (end != field.c_str() + field.size()) cell_error("unparseable integer '" + field + "'", column, row);
    return static_cast<std::int64_t>(v);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path);
    return out;
}

}  // namespace

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_observations_csv(const std::string& path, const std::vector<Observation>& obs) {
    std::ofstream out = open_output(path);
    out << "id,w,delta,eta,x_true,y_true,c_true\n";
    for (const Observation& o : obs) {
        out << o.id << ',' << format_real(o.w) << ',' << o.delta << ',';
        if (o.eta) out << format_real(*o.eta);
        out << ',';
        if (o.x_true) out << format_real(*o.x_true);
        out << ',';
        if (o.y_true) out << format_real(*o.y_true);
        out << ',';
        if (o.c_true) out << format_real(*o.c_true);
        out << '\n';
    }
    if (!out) throw ValidationError("failed while writing: " + path);
}

std::vector<Observation> read_observations_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty observation file: " + path);
    const std::vector<std::string> header = split_fields(line);

    const std::vector<std::string> known = {"id", "w", "delta", "eta", "x_true", "y_true", "c_true"};
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < header.size(); ++i) {
        bool ok = false;
        for (const std::string& name : known) ok = ok || name == header[i];
        if (!ok) throw ValidationError("unknown observation column '" + header[i] + "'");
        if (!pos.emplace(header[i], i).second)
            throw ValidationError("duplicate observation column '" + header[i] + "'");
    }
    for (const char* required : {"id", "w", "delta"})
        if (!pos.count(required))
            throw ValidationError(std::string("missing required column '") + required + "'");

    const auto optional_cell = [&](const std::vector<std::string>& fields, const char* name,
                                   std::size_t row) -> std::optional<double> {
        auto it = pos.find(name);
        if (it == pos.end() || fields[it->second].empty()) return std::nullopt;
        return parse_real(fields[it->second], name, row);
    };

    std::vector<Observation> obs;
    std::unordered_map<std::int64_t, std::size_t> seen;
    for (std::size_t row = 1; std::getline(in, line); ++row) {
        if (line.empty() && in.eof()) break;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size())
            throw ValidationError("row " + std::to_string(row) + " has " +
                                  std::to_string(fields.size()) + " fields, header has " +
                                  std::to_string(header.size()));
        Observation o;
        o.id = parse_integer(fields[pos["id"]], "id", row);
        o.w = parse_real(fields[pos["w"]], "w", row);
        const std::int64_t d = parse_integer(fields[pos["delta"]], "delta", row);
        o.delta = static_cast<int>(d);
        o.eta = optional_cell(fields, "eta", row);
        o.x_true = optional_cell(fields, "x_true", row);
        o.y_true = optional_cell(fields, "y_true", row);
        o.c_true = optional_cell(fields, "c_true", row);
        validate_observation(o, row - 1);
        if (!seen.emplace(o.id, row).second)
            throw ValidationError("duplicate observation id " + std::to_string(o.id) +
                                  " at data row " + std::to_string(row));
        obs.push_back(o);
    }
    return obs;
}

void write_kernels_csv(const std::string& path, const std::vector<Observation>& obs,
                       const std::vector<std::optional<BeliefKernel>>& beliefs) {
    if (obs.size() != beliefs.size())
        throw ValidationError("write_kernels_csv: beliefs do not align with observations");
    std::ofstream out = open_output(path);
    out << "id,kind,p1,p2\n";
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (!beliefs[i]) continue;
        const BeliefKernel& k = *beliefs[i];
        out << obs[i].id << ',' << kernel_kind_name(k.kind) << ',' << format_real(k.p1) << ',';
        if (k.kind == KernelKind::truncated_gaussian || k.kind == KernelKind::truncated_gamma)
            out << format_real(k.p2);
        out << '\n';
    }
    if (!out) throw ValidationError("failed while writing: " + path);
}

std::vector<std::optional<BeliefKernel>> read_kernels_csv(const std::string& path,
                                                          const std::vector<Observation>& obs) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty kernel file: " + path);
    const std::vector<std::string> header = split_fields(line);
    const std::vector<std::string> expected = {"id", "kind", "p1", "p2"};
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < header.size(); ++i) {
        bool ok = false;
        for (const std::string& name : expected) ok = ok || name == header[i];
        if (!ok) throw ValidationError("unknown kernel column '" + header[i] + "'");
        if (!pos.emplace(header[i], i).second)
            throw ValidationError("duplicate kernel column '" + header[i] + "'");
    }
    for (const std::string& name : expected)
        if (!pos.count(name)) throw ValidationError("missing kernel column '" + name + "'");

    std::unordered_map<std::int64_t, std::size_t> index_of;
    for (std::size_t i = 0; i < obs.size(); ++i) index_of.emplace(obs[i].id, i);

    std::vector<std::optional<BeliefKernel>> beliefs(obs.size());
    for (std::size_t row = 1; std::getline(in, line); ++row) {
        if (line.empty() && in.eof()) break;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size())
            throw ValidationError("kernel row " + std::to_string(row) + " has " +
                                  std::to_string(fields.size()) + " fields, header has " +
                                  std::to_string(header.size()));
        const std::int64_t id = parse_integer(fields[pos["id"]], "id", row);
        auto it = index_of.find(id);
        if (it == index_of.end())
            throw ValidationError("kernel row " + std::to_string(row) + " references unknown id " +
                                  std::to_string(id));
        if (beliefs[it->second])
            throw ValidationError("duplicate kernel for id " + std::to_string(id));
        const double lower = obs[it->second].w;
        const std::string& kind = fields[pos["kind"]];
        const double p1 = parse_real(fields[pos["p1"]], "p1", row);
        if (kind == "dirac") {
            beliefs[it->second] = dirac_kernel(p1, lower);
        } else if (kind == "uniform") {
            beliefs[it->second] = uniform_kernel(lower, p1);
        } else if (kind == "truncated-gaussian") {
            beliefs[it->second] =
                truncated_gaussian_kernel(p1, parse_real(fields[pos["p2"]], "p2", row), lower);
        } else if (kind == "truncated-gamma") {
            beliefs[it->second] =
                truncated_gamma_kernel(p1, parse_real(fields[pos["p2"]], "p2", row), lower);
        } else {
            throw ValidationError("unknown kernel kind '" + kind + "' at row " +
                                  std::to_string(row));
        }
    }
    return beliefs;
}

void write_curve_csv(const std::string& path, const std::vector<double>& t,
                     const std::vector<double>& estimate) {
    if (t.size() != estimate.size())
        throw ValidationError("write_curve_csv: mismatched column lengths");
    std::ofstream out = open_output(path);
    out << "t,estimate\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        out << format_real(t[i]) << ',' << format_real(estimate[i]) << '\n';
    if (!out) throw ValidationError("failed while writing: " + path);
}

}  // namespace expertkm
