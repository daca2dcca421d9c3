#include "dp3/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dp3 {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorKind::validation, "expected a [re, im] pair, got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

namespace {
constexpr const char* kKeys[] = {"a", "s00", "s0inf", "s1inf", "g11", "g12", "g21", "g22"};

cplx* slot(MonodromyPoint& p, int k) {
    cplx* s[] = {&p.a, &p.s00, &p.s0inf, &p.s1inf, &p.g11, &p.g12, &p.g21, &p.g22};
    return s[k];
}

const char* special_name(SpecialChart s) {
    switch (s) {
        case SpecialChart::none: return "none";
        case SpecialChart::g21_zero: return "g21_zero";
        case SpecialChart::g12_zero: return "g12_zero";
    }
    return "?";
}

json pair_json(const std::array<cplx, 2>& v) { return json::array({to_json(v[0]), to_json(v[1])}); }

// JSON has no infinity; the report writes null there.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
}  // namespace

json to_json(const MonodromyPoint& pt) {
    json j = json::object();
    MonodromyPoint p = pt;
    for (int k = 0; k < 8; ++k) j[kKeys[k]] = to_json(*slot(p, k));
    return j;
}

MonodromyPoint point_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorKind::validation, "monodromy point must be a JSON object");
    MonodromyPoint p{};
    for (int k = 0; k < 8; ++k) {
        if (!j.contains(kKeys[k])) fail(ErrorKind::validation, std::string("monodromy point lacks \"") + kKeys[k] + "\"");
        *slot(p, k) = cplx_from_json(j.at(kKeys[k]));
    }
    return p;
}

json to_json(const EquationParams& p) { return {{"eps", p.eps}, {"b", p.b}, {"eps2", p.eps2}}; }

json to_json(const LargeTauChart& c) {
    return {{"nu_plus_1", to_json(c.nu_plus_1)}, {"omega", to_json(c.omega)},   {"z", to_json(c.z)},
            {"z_unshifted", to_json(c.z_unshifted)}, {"eps1", c.eps1},               {"params", to_json(c.params)},
            {"special", special_name(c.special)}, {"mapped", to_json(c.mapped)}, {"a", to_json(c.a)}};
}

json to_json(const SmallTauChart& c) {
    json j = {{"rho", to_json(c.rho)},     {"p1", pair_json(c.p1)},         {"p2", pair_json(c.p2)},
              {"chi1", pair_json(c.chi1)}, {"chi2", pair_json(c.chi2)},     {"eps1", c.eps1},
              {"params", to_json(c.params)}, {"log_mode", c.log_mode},      {"mapped", to_json(c.mapped)},
              {"a", to_json(c.a)}};
    if (c.log_mode) {
        j["Q"] = pair_json(c.Q);
        j["a2"] = to_json(c.a2);
        j["b2"] = to_json(c.b2);
    }
    return j;
}

json to_json(const FitResult& f) {
    return {{"nu_plus_1", to_json(f.nu_plus_1)}, {"z", to_json(f.z)},         {"residual_norm", num(f.residual_norm)},
            {"condition", num(f.condition)},     {"amplitude", f.amplitude}, {"special", f.special},
            {"iterations", f.iterations}};
}

json to_json(const ConnectionReport& r) {
    json table = json::array();
    for (const auto& row : r.table)
        table.push_back({{"tau0", row.tau0}, {"tau1", row.tau1}, {"err_nu", num(row.err_nu)}, {"err_z", num(row.err_z)}});
    return {{"predicted", {{"special", r.special}, {"nu_plus_1", to_json(r.predicted_nu)}, {"z", to_json(r.predicted_z)}}},
            {"fitted", to_json(r.fitted)},
            {"abs_errors",
             {{"nu_plus_1", num(r.err_nu)}, {"z", num(r.err_z)}, {"leading_coefficient", num(r.leading_coefficient_error)}}},
            {"convergence_table", table}};
}

json to_json(const std::vector<LadderEntry>& lad) {
    json out = json::array();
    for (const auto& e : lad)
        out.push_back({{"n", e.n},
                       {"a_n", to_json(e.a_n)},
                       {"tau", to_json(e.state.tau)},
                       {"u", to_json(e.state.u)},
                       {"du", to_json(e.state.du)},
                       {"v", to_json(e.v)},
                       {"g", to_json(e.g)},
                       {"f", to_json(e.f)}});
    return out;
}

json load_json_arg(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && (s[first] == '{' || s[first] == '[')) return json::parse(s);
        std::ifstream in(s);
        if (!in) fail(ErrorKind::validation, "cannot open '" + s + "'");
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::validation, std::string("malformed JSON: ") + e.what());
    }
}

void write_csv(std::ostream& os, const Trajectory& t) {
    os << "tau_re,tau_im,u_re,u_im,du_re,du_im,phi_re,phi_im,H_re,H_im\n";
    const auto old = os.precision(17);
    for (std::size_t k = 0; k < t.samples.size(); ++k) {
        const auto& s = t.samples[k];
        os << s.tau.real() << ',' << s.tau.imag() << ',' << s.u.real() << ',' << s.u.imag() << ',' << s.du.real() << ','
           << s.du.imag() << ',';
        if (s.phi) os << s.phi->real() << ',' << s.phi->imag();
        else os << ',';
        os << ',';
        if (k < t.H.size()) os << t.H[k].real() << ',' << t.H[k].imag();
        else os << ',';
        os << '\n';
    }
    os.precision(old);
}

Trajectory read_csv(std::istream& is, cplx a, const EquationParams& p) {
    Trajectory t;
    t.params = p;
    t.a = a;
    std::string line;
    if (!std::getline(is, line) || line.rfind("tau_re,tau_im,u_re,u_im,du_re,du_im", 0) != 0)
        fail(ErrorKind::validation, "trajectory CSV must start with the tau_re,tau_im,... header");
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (line.back() == ',') f.emplace_back();
        if (f.size() < 6) fail(ErrorKind::validation, "CSV row " + std::to_string(row) + " has fewer than 6 columns");
        auto d = [&](std::size_t k) {
            try {
                return std::stod(f[k]);
            } catch (const std::exception&) {
                fail(ErrorKind::validation, "CSV row " + std::to_string(row) + ": bad number '" + f[k] + "'");
            }
        };
        SolutionState s{{d(0), d(1)}, {d(2), d(3)}, {d(4), d(5)}, std::nullopt};
        if (f.size() >= 8 && !f[6].empty()) s.phi = cplx{d(6), d(7)};
        t.samples.push_back(s);
        t.H.push_back(f.size() >= 10 && !f[8].empty() ? cplx{d(8), d(9)} : hamiltonian_u(s, a, p));
    }
    return t;
}

}  // namespace dp3
