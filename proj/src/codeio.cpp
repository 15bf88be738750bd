#include "cosec/codeio.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace cosec {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

}  // namespace

void write_code(std::ostream& out, const GeneratorMatrix& g) {
    nlohmann::json j;
    j["kappa"] = g.kappa;
    j["n"] = g.n();
    j["columns"] = g.columns;
    out << j.dump(2) << '\n';
}

void write_code_file(const std::string& path, const GeneratorMatrix& g) {
    auto f = open_out(path);
    write_code(f, g);
}

GeneratorMatrix read_code(std::istream& in) {
    nlohmann::json j;
    in >> j;
    GeneratorMatrix g;
    g.kappa = j.at("kappa").get<int>();
    if (g.kappa < 1 || g.kappa > kMaxKappa)
        throw std::runtime_error("code file: kappa out of range");
    g.columns = j.at("columns").get<std::vector<std::uint32_t>>();
    const int n = j.at("n").get<int>();
    if (n != g.n()) throw std::runtime_error("code file: n does not match column count");
    for (std::uint32_t c : g.columns)
        if (c == 0 || c >= (1u << g.kappa))
            throw std::runtime_error("code file: column out of range");
    return g;
}

GeneratorMatrix read_code_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return read_code(f);
}

void write_trace(std::ostream& out, const DescentTrace& trace) {
    out << "# seed=" << trace.seed << '\n';
    out << "step,objective,dist_from_uniform,q_norm_sq,k_g,tau\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const TraceRecord& r : trace.records) {
        out << r.step << ',' << r.objective << ',' << r.dist_from_uniform << ','
            << r.q_norm_sq << ',' << r.k_g << ',' << r.tau << '\n';
    }
    for (const auto& q : trace.q_snapshots) {
        out << "# q " << nlohmann::json(q).dump() << '\n';
    }
}

void write_trace_file(const std::string& path, const DescentTrace& trace) {
    auto f = open_out(path);
    write_trace(f, trace);
}

}  // namespace cosec
