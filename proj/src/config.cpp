#include "cns/config.hpp"

#include "cns/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace cns {

void RunSpec::validate() const {
    if (std::find(std::begin(run_modes), std::end(run_modes), mode) == std::end(run_modes))
        throw ConfigError("unknown mode '" + mode + "'");
    if (out_dir.empty()) throw ConfigError("output directory must not be empty");
    solve.validate();
    params.validate();
    cns::validate(data);
    if (n_starts < 1) throw ConfigError("n_starts must be at least 1");
    if (!(start_fraction > 0.0)) throw ConfigError("start_fraction must be positive");
    if (mms_n.size() < 2) throw ConfigError("mms_n needs at least two grid sizes");
    for (int n : mms_n)
        if (n < Grid::min_n) throw ConfigError("mms_n entries must be at least " + std::to_string(Grid::min_n));
    if (!(mms_amplitude > 0.0)) throw ConfigError("mms_amplitude must be positive");
    if (sweep_n.empty() || sweep_eps.empty()) throw ConfigError("sweep_n and sweep_eps must not be empty");
    for (int n : sweep_n)
        if (n < Grid::min_n) throw ConfigError("sweep_n entries must be at least " + std::to_string(Grid::min_n));
    for (double e : sweep_eps)
        if (!(e > 0.0)) throw ConfigError("sweep_eps entries must be positive");
    if (!(estimate_constant > 0.0)) throw ConfigError("estimate_constant must be positive");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Type errors carry only the reason; the caller adds line and key.
struct BadValue {
    std::string why;
};

double to_double(const std::string& v) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw BadValue{"expected a real number, got '" + v + "'"};
    return x;
}

long long to_integer(const std::string& v) {
    long long x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw BadValue{"expected an integer, got '" + v + "'"};
    return x;
}

int to_int(const std::string& v) {
    const long long x = to_integer(v);
    if (x < -2147483647LL || x > 2147483647LL) throw BadValue{"integer out of range: " + v};
    return static_cast<int>(x);
}

template <class T, class F>
std::vector<T> to_list(const std::string& v, F convert) {
    std::vector<T> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(convert(trim(item)));
    if (out.empty()) throw BadValue{"expected a comma-separated list"};
    return out;
}

std::string real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F fmt) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + fmt(v[k]);
    return s;
}

using Setter = std::function<void(RunSpec&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& key_table() {
    static const std::map<std::string, std::map<std::string, Setter>> table = {
        {"",
         {{"mode", [](RunSpec& s, const std::string& v) { s.mode = v; }},
          {"out", [](RunSpec& s, const std::string& v) { s.out_dir = v; }},
          {"seed",
           [](RunSpec& s, const std::string& v) {
               const long long x = to_integer(v);
               if (x < 0) throw BadValue{"seed must be non-negative"};
               s.seed = static_cast<std::uint64_t>(x);
           }}}},
        {"grid", {{"n", [](RunSpec& s, const std::string& v) { s.solve.n = to_int(v); }}}},
        {"physics",
         {{"mu", [](RunSpec& s, const std::string& v) { s.params.mu = to_double(v); }},
          {"nu", [](RunSpec& s, const std::string& v) { s.params.nu = to_double(v); }},
          {"gamma", [](RunSpec& s, const std::string& v) { s.params.gamma = to_double(v); }},
          {"f", [](RunSpec& s, const std::string& v) { s.params.f = to_double(v); }},
          {"p", [](RunSpec& s, const std::string& v) { s.params.p = to_double(v); }}}},
        {"data",
         {{"delta", [](RunSpec& s, const std::string& v) { s.data.delta = to_double(v); }},
          {"rho_profile", [](RunSpec& s, const std::string& v) { s.data.rho_profile = v; }},
          {"d_profile", [](RunSpec& s, const std::string& v) { s.data.d_profile = v; }},
          {"b_profile", [](RunSpec& s, const std::string& v) { s.data.b_profile = v; }},
          {"mms_amplitude", [](RunSpec& s, const std::string& v) { s.mms_amplitude = to_double(v); }}}},
        {"solver",
         {{"outer_tol", [](RunSpec& s, const std::string& v) { s.solve.outer_tol = to_double(v); }},
          {"max_outer", [](RunSpec& s, const std::string& v) { s.solve.max_outer = to_int(v); }},
          {"inner_tol", [](RunSpec& s, const std::string& v) { s.solve.inner_tol = to_double(v); }},
          {"max_inner", [](RunSpec& s, const std::string& v) { s.solve.max_inner = to_int(v); }},
          {"ball_radius", [](RunSpec& s, const std::string& v) { s.solve.ball_radius = to_double(v); }},
          {"smallness_cap", [](RunSpec& s, const std::string& v) { s.solve.smallness_cap = to_double(v); }},
          {"extension_cap", [](RunSpec& s, const std::string& v) { s.solve.extension_cap = to_double(v); }},
          {"damping", [](RunSpec& s, const std::string& v) { s.solve.damping = to_double(v); }},
          {"rho_min", [](RunSpec& s, const std::string& v) { s.solve.rho_min = to_double(v); }},
          {"scheme",
           [](RunSpec& s, const std::string& v) {
               if (v == "upwind")
                   s.solve.scheme = TransportScheme::Upwind;
               else if (v == "centered")
                   s.solve.scheme = TransportScheme::Centered;
               else
                   throw BadValue{"scheme must be 'upwind' or 'centered', got '" + v + "'"};
           }},
          {"n_starts", [](RunSpec& s, const std::string& v) { s.n_starts = to_int(v); }},
          {"start_fraction", [](RunSpec& s, const std::string& v) { s.start_fraction = to_double(v); }},
          {"estimate_constant", [](RunSpec& s, const std::string& v) { s.estimate_constant = to_double(v); }}}},
        {"schedule",
         {{"eps_schedule",
           [](RunSpec& s, const std::string& v) { s.solve.eps_schedule = to_list<double>(v, to_double); }},
          {"mms_n", [](RunSpec& s, const std::string& v) { s.mms_n = to_list<int>(v, to_int); }},
          {"sweep_n", [](RunSpec& s, const std::string& v) { s.sweep_n = to_list<int>(v, to_int); }},
          {"sweep_eps", [](RunSpec& s, const std::string& v) { s.sweep_eps = to_list<double>(v, to_double); }}}},
    };
    return table;
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& why) {
    throw ConfigError("line " + std::to_string(line) + (key.empty() ? "" : ", key '" + key + "'") + ": " + why);
}

} // namespace

RunSpec parse_config(const std::string& text) {
    RunSpec spec;
    const auto& table = key_table();
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    // Geometric schedule keys are collected and applied at the end.
    double eps_first = 1e-1, eps_last = 1e-12, eps_ratio = 1e-1;
    int geometric_line = 0, list_line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw.substr(0, raw.find_first_of("#;")));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "", "malformed section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty() || !table.count(section)) fail(line, "", "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "", "expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "", "missing key");
        if (value.empty()) fail(line, key, "missing value");
        try {
            if (section == "schedule" && (key == "eps_first" || key == "eps_last" || key == "eps_ratio")) {
                const double x = to_double(value);
                (key == "eps_first" ? eps_first : key == "eps_last" ? eps_last : eps_ratio) = x;
                geometric_line = line;
                continue;
            }
            const auto& keys = table.at(section);
            const auto it = keys.find(key);
            if (it == keys.end())
                fail(line, key, "unknown key" + (section.empty() ? std::string(" before any section") : " in [" + section + "]"));
            if (section == "schedule" && key == "eps_schedule") list_line = line;
            it->second(spec, value);
            // Single-field invariants are checked as soon as the field is set,
            // so the error points at the offending line.
            spec.validate();
        } catch (const BadValue& e) {
            fail(line, key, e.why);
        } catch (const ConfigError& e) {
            const std::string what = e.what();
            if (what.rfind("line ", 0) == 0) throw;
            fail(line, key, what);
        }
    }
    if (geometric_line) {
        if (list_line) fail(geometric_line, "eps_first", "give either eps_schedule or eps_first/eps_last/eps_ratio");
        try {
            spec.solve.eps_schedule = geometric_schedule(eps_first, eps_last, eps_ratio);
            spec.validate();
        } catch (const ConfigError& e) {
            fail(geometric_line, "eps_first/eps_last/eps_ratio", e.what());
        }
    }
    spec.validate();
    return spec;
}

RunSpec load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const RunSpec& s) {
    std::ostringstream o;
    auto integer = [](int v) { return std::to_string(v); };
    o << "mode = " << s.mode << "\n"
      << "out = " << s.out_dir << "\n"
      << "seed = " << s.seed << "\n\n"
      << "[grid]\n"
      << "n = " << s.solve.n << "\n\n"
      << "[physics]\n"
      << "mu = " << real(s.params.mu) << "\n"
      << "nu = " << real(s.params.nu) << "\n"
      << "gamma = " << real(s.params.gamma) << "\n"
      << "f = " << real(s.params.f) << "\n"
      << "p = " << real(s.params.p) << "\n\n"
      << "[data]\n"
      << "delta = " << real(s.data.delta) << "\n"
      << "rho_profile = " << s.data.rho_profile << "\n"
      << "d_profile = " << s.data.d_profile << "\n"
      << "b_profile = " << s.data.b_profile << "\n"
      << "mms_amplitude = " << real(s.mms_amplitude) << "\n\n"
      << "[solver]\n"
      << "outer_tol = " << real(s.solve.outer_tol) << "\n"
      << "max_outer = " << s.solve.max_outer << "\n"
      << "inner_tol = " << real(s.solve.inner_tol) << "\n"
      << "max_inner = " << s.solve.max_inner << "\n"
      << "ball_radius = " << real(s.solve.ball_radius) << "\n"
      << "smallness_cap = " << real(s.solve.smallness_cap) << "\n"
      << "extension_cap = " << real(s.solve.extension_cap) << "\n"
      << "damping = " << real(s.solve.damping) << "\n"
      << "rho_min = " << real(s.solve.rho_min) << "\n"
      << "scheme = " << (s.solve.scheme == TransportScheme::Upwind ? "upwind" : "centered") << "\n"
      << "n_starts = " << s.n_starts << "\n"
      << "start_fraction = " << real(s.start_fraction) << "\n"
      << "estimate_constant = " << real(s.estimate_constant) << "\n\n"
      << "[schedule]\n"
      << "eps_schedule = " << join(s.solve.eps_schedule, real) << "\n"
      << "mms_n = " << join(s.mms_n, integer) << "\n"
      << "sweep_n = " << join(s.sweep_n, integer) << "\n"
      << "sweep_eps = " << join(s.sweep_eps, real) << "\n";
    return o.str();
}

} // namespace cns
