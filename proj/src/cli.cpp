#include "dp3/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "dp3/asymptotics.hpp"
#include "dp3/backlund.hpp"
#include "dp3/io.hpp"
#include "dp3/monodromy.hpp"
#include "dp3/ode.hpp"
#include "dp3/sampler.hpp"

namespace dp3 {

int exit_code_for(const std::string& kind) {
    if (kind == to_string(ErrorKind::validation)) return 2;
    if (kind == to_string(ErrorKind::integration)) return 4;
    return 3;
}

namespace {

std::shared_ptr<spdlog::logger> logger() {
    static auto lg = [] {
        auto l = std::make_shared<spdlog::logger>("dp3", std::make_shared<spdlog::sinks::stderr_sink_mt>());
        const char* env = std::getenv("DP3_LOG");
        l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
        l->set_pattern("[dp3 %l] %v");
        return l;
    }();
    return lg;
}

struct Common {
    int eps = 1;
    double b = 1.0;
    std::optional<int> eps2;
    int eps1 = 0;
    std::string point;
    std::string out;

    EquationParams params() const { return make_params(eps, b, eps2); }
    MonodromyPoint pt() const {
        if (point.empty()) fail(ErrorKind::validation, "--point is required");
        return point_from_json(load_json_arg(point));
    }
};

void add_params(CLI::App* c, Common& o) {
    c->add_option("--eps", o.eps, "eps = +-1")->check(CLI::IsMember({-1, 1}));
    c->add_option("--b", o.b, "b != 0");
    c->add_option("--eps2", o.eps2, "sector label for eps b < 0")->check(CLI::IsMember({-1, 0, 1}));
}
void add_point(CLI::App* c, Common& o) { c->add_option("--point", o.point, "monodromy point: inline JSON or file"); }
void add_ray(CLI::App* c, Common& o) {
    c->add_option("--eps1", o.eps1, "ray arg tau = pi eps1 (or pi eps1 / 2 with --imag)")->check(CLI::IsMember({-1, 0, 1}));
}
void add_out(CLI::App* c, Common& o) { c->add_option("--out", o.out, "output file (default stdout)"); }

cplx parse_cplx(const std::string& s) { return cplx_from_json(load_json_arg(s.find('[') == std::string::npos ? "[" + s + ",0]" : s)); }

void emit(const Common& o, std::ostream& out, const std::string& text) {
    if (o.out.empty()) {
        out << text << '\n';
        return;
    }
    std::ofstream f(o.out);
    if (!f) fail(ErrorKind::validation, "cannot write '" + o.out + "'");
    f << text << '\n';
}
void emit(const Common& o, std::ostream& out, const json& j) { emit(o, out, j.dump(2)); }

Direction parse_dir(const std::string& s) {
    if (s == "up") return Direction::up;
    if (s == "down") return Direction::down;
    fail(ErrorKind::validation, "direction must be up or down");
}

LieKind parse_lie(const std::string& s) {
    if (s == "negate_tau") return LieKind::negate_tau;
    if (s == "negate_a") return LieKind::negate_a;
    if (s == "rotate_tau") return LieKind::rotate_tau;
    fail(ErrorKind::validation, "lie kind must be negate_tau, negate_a or rotate_tau");
}

struct LadderArgs {
    double tau = 1.0;
    int n_max = 5;
    std::string a0 = "0";
    std::string u, du;
    std::string dir = "up";
};

void add_ladder(CLI::App* c, LadderArgs& l) {
    c->add_option("--tau", l.tau, "evaluation point (tau > 0 on the positive axis, sign picks the ray)");
    c->add_option("--n-max", l.n_max, "highest rung")->check(CLI::NonNegativeNumber);
    c->add_option("--a0", l.a0, "seed parameter a0 as re or [re,im]");
    c->add_option("--u", l.u, "seed u; omitted means the algebraic solution");
    c->add_option("--du", l.du, "seed u'");
    c->add_option("--dir", l.dir, "up or down");
}

SolutionState ladder_seed(const LadderArgs& l, const EquationParams& p) {
    if (l.u.empty() != l.du.empty()) fail(ErrorKind::validation, "--u and --du go together");
    if (l.u.empty()) {
        if (parse_cplx(l.a0) != cplx{0.0}) fail(ErrorKind::validation, "the algebraic seed needs a0 = 0");
        if (!(l.tau > 0.0)) fail(ErrorKind::validation, "the algebraic seed lives on tau > 0");
        return algebraic_solution(l.tau, p);
    }
    return {l.tau, parse_cplx(l.u), parse_cplx(l.du), std::nullopt};
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Degenerate third Painleve equation: monodromy data, asymptotics and numerics"};
    app.name("dp3");
    app.require_subcommand(1);
    Common o;

    // monodromy
    auto* mono = app.add_subcommand("monodromy", "points of the monodromy manifold");
    mono->require_subcommand(1);
    auto* m_check = mono->add_subcommand("check", "manifold, cyclic and cos(2 pi rho) residuals");
    add_point(m_check, o);
    add_out(m_check, o);
    auto* m_branch = mono->add_subcommand("branch", "build a point from branch parameters");
    int branch = 1;
    std::string a_str = "0", free_str;
    m_branch->add_option("--branch", branch, "1, 2 or 3")->check(CLI::IsMember({1, 2, 3}));
    m_branch->add_option("--a", a_str, "a as re or [re,im]");
    m_branch->add_option("--free", free_str, "JSON list: [g11,g12,g21,g22], [s00,g22] or [s00,g11]")->required();
    add_out(m_branch, o);
    auto* m_map = mono->add_subcommand("map", "apply F, Fhat, backlund or lie");
    std::string map_name, dir = "up", lie = "negate_tau";
    int e1 = 0, e2 = 0, pp = 1, ll = 1;
    m_map->add_option("--map", map_name, "F, Fhat, backlund or lie")->required();
    m_map->add_option("--map-eps1", e1, "eps1 of F or Fhat");
    m_map->add_option("--map-eps2", e2, "eps2 of F or Fhat");
    m_map->add_option("--dir", dir, "backlund direction: up or down");
    m_map->add_option("--kind", lie, "negate_tau, negate_a or rotate_tau");
    m_map->add_option("--p", pp, "+-1")->check(CLI::IsMember({-1, 1}));
    m_map->add_option("--l", ll, "+-1")->check(CLI::IsMember({-1, 1}));
    add_point(m_map, o);
    add_out(m_map, o);
    auto* m_sample = mono->add_subcommand("sample", "seeded random points");
    std::uint64_t seed = 0;
    int count = 10;
    SampleConstraints sc;
    double re_nu = -1, abs_nu = -1, re_rho = -1;
    m_sample->add_option("--seed", seed, "RNG seed");
    m_sample->add_option("--count", count, "number of points")->check(CLI::NonNegativeNumber);
    m_sample->add_option("--branch", branch, "1, 2 or 3")->check(CLI::IsMember({1, 2, 3}));
    m_sample->add_option("--a-max", sc.a_max, "|a| bound");
    m_sample->add_option("--im-a-max", sc.im_a_max, "|Im a| bound");
    m_sample->add_option("--re-a-max", sc.re_a_max, "|Re a| bound");
    m_sample->add_option("--entry-max", sc.entry_max, "bound on |s| and |g_ij|");
    m_sample->add_option("--re-nu-max", re_nu, "|Re(nu+1)| bound");
    m_sample->add_option("--abs-nu-max", abs_nu, "|nu+1| bound (branch 1)");
    m_sample->add_option("--re-rho-max", re_rho, "|Re rho| bound");
    m_sample->add_option("--max-attempts", sc.max_attempts, "rejection budget");
    add_out(m_sample, o);

    // chart
    auto* chart = app.add_subcommand("chart", "asymptotic charts");
    chart->require_subcommand(1);
    std::string rho_str;
    auto* c_large = chart->add_subcommand("large", "large-tau chart (nu+1, omega, z)");
    auto* c_small = chart->add_subcommand("small", "small-tau chart (rho, p, chi)");
    c_small->add_option("--rho", rho_str, "use -rho instead of the canonical root");
    for (auto* c : {c_large, c_small}) {
        add_point(c, o);
        add_params(c, o);
        add_ray(c, o);
        add_out(c, o);
    }

    // eval
    auto* ev = app.add_subcommand("eval", "evaluate an asymptotic formula");
    ev->require_subcommand(1);
    std::string regime = "large";
    std::vector<double> taus;
    bool imag = false;
    auto* e_u = ev->add_subcommand("u", "u(tau)");
    auto* e_H = ev->add_subcommand("H", "H(tau)");
    for (auto* c : {e_u, e_H}) {
        c->add_option("--regime", regime, "large or small")->check(CLI::IsMember({"large", "small"}));
        c->add_option("--tau", taus, "|tau| values")->required()->expected(1, -1);
        c->add_flag("--imag", imag, "ray arg tau = pi eps1 / 2 (eps1 = +-1)");
        add_point(c, o);
        add_params(c, o);
        add_ray(c, o);
        add_out(c, o);
    }

    // integrate
    auto* integ = app.add_subcommand("integrate", "integrate along a ray and write CSV");
    double tau0 = 0.1, tau1 = 10.0, tol = 1e-10;
    int dense = 0;
    std::string u0, du0, phi0, a_int = "0";
    bool algebraic = false;
    integ->add_option("--tau0", tau0, "start |tau|");
    integ->add_option("--tau1", tau1, "end |tau|");
    integ->add_option("--tol", tol, "tolerance in [1e-13, 1e-6]");
    integ->add_option("--dense", dense, "emit this many equally spaced points instead of steps");
    integ->add_option("--u0", u0, "initial u");
    integ->add_option("--du0", du0, "initial u'");
    integ->add_option("--phi0", phi0, "initial phi (optional)");
    integ->add_option("--a", a_int, "a as re or [re,im]; taken from --point when seeding from it");
    integ->add_flag("--algebraic", algebraic, "seed with the algebraic solution (a = 0, eps1 = 0)");
    add_point(integ, o);
    add_params(integ, o);
    add_ray(integ, o);
    add_out(integ, o);

    // verify-connection
    auto* vc = app.add_subcommand("verify-connection", "seed at tau0 from the small-tau chart, fit at tau1");
    std::vector<double> t0_list, t1_list;
    double wf = 0.5;
    vc->add_option("--tau0", tau0, "seed |tau|");
    vc->add_option("--tau1", tau1, "end |tau|");
    vc->add_option("--tau0-list", t0_list, "extra seeds for the convergence table")->expected(0, -1);
    vc->add_option("--tau1-list", t1_list, "extra end points")->expected(0, -1);
    vc->add_option("--tol", tol, "integrator tolerance");
    vc->add_option("--window-fraction", wf, "fit on [f tau1, tau1]");
    add_point(vc, o);
    add_params(vc, o);
    add_ray(vc, o);
    add_out(vc, o);

    // ladder / lattice
    LadderArgs la;
    auto* lad = app.add_subcommand("ladder", "Backlund ladder u_n, v_n, g_n, f_n");
    add_ladder(lad, la);
    add_params(lad, o);
    add_out(lad, o);
    auto* lat = app.add_subcommand("lattice", "lattice residuals along the ladder");
    std::string which = "km";
    lat->add_option("--which", which, "km, km_literal, dp, toda, toda_derived or f_rec");
    add_ladder(lat, la);
    add_params(lat, o);
    add_out(lat, o);

    // fit
    auto* fit = app.add_subcommand("fit", "fit (nu+1, z) to a trajectory CSV");
    std::string csv;
    double wlo = 0, whi = 0;
    bool no_nuisance = false;
    fit->add_option("--csv", csv, "trajectory file")->required();
    fit->add_option("--a", a_int, "a as re or [re,im]");
    fit->add_option("--window-lo", wlo, "window start |tau|");
    fit->add_option("--window-hi", whi, "window end |tau|");
    fit->add_flag("--no-nuisance", no_nuisance, "drop the tau^{-1/3} correction columns");
    add_params(fit, o);
    add_out(fit, o);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << json{{"error", to_string(ErrorKind::validation)}, {"message", e.what()}}.dump() << '\n';
        return 2;
    }

    auto log = logger();

    if (m_check->parsed()) {
        const MonodromyPoint p = o.pt();
        const auto r = manifold_residual(p);
        const auto cr = cyclic_residuals(p);
        const auto [l, rr] = cos2pirho_pair(p);
        emit(o, out,
             json{{"residuals", r},
                  {"max", max_manifold_residual(p)},
                  {"on_manifold", max_manifold_residual(p) < 1e-10},
                  {"cyclic", cr.cyclic},
                  {"semi_cyclic", cr.semi_cyclic},
                  {"rho", to_json(rho_from(p))},
                  {"cos2pirho", {to_json(l), to_json(rr)}}});
    } else if (m_branch->parsed()) {
        const json fr = load_json_arg(free_str);
        if (!fr.is_array()) fail(ErrorKind::validation, "--free must be a JSON list");
        std::vector<cplx> v;
        for (const auto& x : fr) v.push_back(cplx_from_json(x));
        emit(o, out, to_json(from_branch(branch, parse_cplx(a_str), v)));
    } else if (m_map->parsed()) {
        const MonodromyPoint p = o.pt();
        MonodromyPoint q;
        if (map_name == "F") q = apply_F(p, e1, e2);
        else if (map_name == "Fhat") q = apply_Fhat(p, e1, e2);
        else if (map_name == "backlund") q = backlund_monodromy(p, parse_dir(dir));
        else if (map_name == "lie") q = lie_point_monodromy(p, parse_lie(lie), pp, ll);
        else fail(ErrorKind::validation, "--map must be F, Fhat, backlund or lie");
        emit(o, out, to_json(q));
    } else if (m_sample->parsed()) {
        if (re_nu > 0) sc.re_nu_max = re_nu;
        if (abs_nu > 0) sc.abs_nu_max = abs_nu;
        if (re_rho > 0) sc.re_rho_max = re_rho;
        json arr = json::array();
        for (const auto& p : sample_manifold(seed, count, branch, sc)) arr.push_back(to_json(p));
        emit(o, out, arr);
    } else if (c_large->parsed()) {
        emit(o, out, to_json(large_tau_chart(o.pt(), o.eps1, o.params())));
    } else if (c_small->parsed()) {
        std::optional<cplx> rho;
        if (!rho_str.empty()) rho = parse_cplx(rho_str);
        emit(o, out, to_json(small_tau_chart(o.pt(), o.eps1, o.params(), rho)));
    } else if (e_u->parsed() || e_H->parsed()) {
        const MonodromyPoint p = o.pt();
        const EquationParams ep = o.params();
        const bool small = regime == "small";
        std::vector<cplx> vals;
        if (imag) {
            if (e_H->parsed()) fail(ErrorKind::validation, "eval H has no --imag form");
            if (o.eps1 == 0) fail(ErrorKind::validation, "--imag needs --eps1 +-1");
            for (double t : taus) vals.push_back(u_imag(p, o.eps1, ep, t, small ? Regime::small : Regime::large));
        } else if (small) {
            const SmallTauChart c = small_tau_chart(p, o.eps1, ep);
            for (double t : taus) vals.push_back(e_u->parsed() ? u_small(c, t) : H_small(c, t));
        } else {
            const LargeTauChart c = large_tau_chart(p, o.eps1, ep);
            for (double t : taus) vals.push_back(e_u->parsed() ? u_large(c, t) : H_large(c, t));
        }
        if (vals.size() == 1) {
            emit(o, out, to_json(vals[0]).dump());
        } else {
            json arr = json::array();
            for (std::size_t k = 0; k < vals.size(); ++k) arr.push_back({{"tau", taus[k]}, {"value", to_json(vals[k])}});
            emit(o, out, arr);
        }
    } else if (integ->parsed()) {
        const EquationParams ep = o.params();
        const double ray = o.eps1 == 0 ? 1.0 : -1.0;
        SolutionState s;
        cplx a = parse_cplx(a_int);
        if (algebraic) {
            if (o.eps1 != 0) fail(ErrorKind::validation, "--algebraic is on the positive axis");
            a = 0.0;
            s = algebraic_solution(tau0, ep);
        } else if (!o.point.empty()) {
            const MonodromyPoint p = o.pt();
            const SmallTauChart c = small_tau_chart(p, o.eps1, ep);
            a = p.a;
            s = {ray * tau0, u_small(c, tau0), du_small(c, tau0), std::nullopt};
        } else {
            if (u0.empty() || du0.empty()) fail(ErrorKind::validation, "give --u0 and --du0, --point or --algebraic");
            s = {ray * tau0, parse_cplx(u0), parse_cplx(du0), std::nullopt};
        }
        if (!phi0.empty()) s.phi = parse_cplx(phi0);
        IntegrateOptions io;
        io.tol = tol;
        if (dense < 0) fail(ErrorKind::validation, "--dense must be >= 0");
        if (dense == 1) io.dense = {tau1};
        for (int k = 0; k < dense && dense > 1; ++k) io.dense.push_back(tau0 + (tau1 - tau0) * k / (dense - 1));
        log->info("integrating from |tau| = {} to {} with tol {}", tau0, tau1, tol);
        const Trajectory tr = integrate_ray(s, a, ep, tau1, io);
        std::ostringstream os;
        write_csv(os, tr);
        std::string text = os.str();
        if (!text.empty() && text.back() == '\n') text.pop_back();
        emit(o, out, text);
    } else if (vc->parsed()) {
        ConnectionOptions co;
        co.eps1 = o.eps1;
        co.tol = vc->count("--tol") ? tol : 1e-12;
        co.tau0_list = t0_list;
        co.tau1_list = t1_list;
        co.window_fraction = wf;
        log->info("verify-connection tau0 = {}, tau1 = {}", tau0, tau1);
        emit(o, out, to_json(verify_connection(o.pt(), o.params(), tau0, tau1, co)));
    } else if (lad->parsed() || lat->parsed()) {
        const EquationParams ep = o.params();
        const SolutionState s = ladder_seed(la, ep);
        const cplx a0 = parse_cplx(la.a0);
        if (lad->parsed()) {
            emit(o, out, to_json(ladder(s, a0, ep, la.n_max, parse_dir(la.dir))));
        } else {
            const auto l = ladder(s, a0, ep, la.n_max);
            json arr = json::array();
            for (const auto& r : lattice_residuals(l, lattice_from_string(which), a0, ep))
                arr.push_back({{"n", r.n}, {"residual", r.residual}});
            emit(o, out, json{{"lattice", which}, {"residuals", arr}});
        }
    } else if (fit->parsed()) {
        std::ifstream in(csv);
        if (!in) fail(ErrorKind::validation, "cannot open '" + csv + "'");
        const EquationParams ep = o.params();
        const Trajectory tr = read_csv(in, parse_cplx(a_int), ep);
        FitOptions fo;
        fo.window_lo = wlo;
        fo.window_hi = whi;
        fo.nuisance = !no_nuisance;
        emit(o, out, to_json(fit_large_tau(tr, ep, fo)));
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto report = [&](const std::string& kind, const std::string& msg) {
        err << json{{"error", kind}, {"message", msg}}.dump() << '\n';
        return exit_code_for(kind);
    };
    try {
        return dispatch(args, out, err);
    } catch (const Error& e) {
        return report(to_string(e.kind()), e.what());
    } catch (const json::exception& e) {
        return report(to_string(ErrorKind::validation), e.what());
    } catch (const std::invalid_argument& e) {
        return report(to_string(ErrorKind::validation), e.what());
    }
}

}  // namespace dp3
