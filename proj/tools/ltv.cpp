// ltv: exact verification of the torus action on a height-2 deformation
// disc. Subcommands emit machine-readable certificates (JSON or CSV); the
// exit code is 0 when every check passed, 2 when any failed, 3 on a
// configuration error.

#include "ltv/checks.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace ltv;

struct Options {
    long p = 0;
    long f = 1;
    long e = 1;
    long q = 0;
    long max_n = -1;
    long disc_s = -1;
    int tier = 1;
    std::string format = "json";
    std::string out;
};

FieldParams resolve_field(const Options& o) {
    if (o.p == 0 && o.q == 0)
        throw std::invalid_argument("one of --p or --q is required");
    FieldParams fp = o.p != 0 ? FieldParams(o.p, o.f, o.e) : FieldParams::from_q(o.q, o.e);
    if (o.p != 0 && o.q != 0 && fp.q != o.q)
        throw std::invalid_argument("inconsistent parameters: p^f != q");
    return fp;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--p", o.p, "residue characteristic (prime)");
    cmd->add_option("--f", o.f, "residue degree, q = p^f")->default_val(1);
    cmd->add_option("--e", o.e, "ramification index, v(p) = e")->default_val(1);
    cmd->add_option("--q", o.q, "residue cardinality (prime power; derives p, f if --p absent)");
    cmd->add_option("--max-n", o.max_n, "depth of coefficient tables");
    cmd->add_option("--disc-s", o.disc_s, "largest critical-disc index");
    cmd->add_option("--tier", o.tier, "1 = desk scale, 2 = adds deep equality rows")
        ->default_val(1)
        ->check(CLI::Range(1, 2));
    cmd->add_option("--format", o.format, "output format")
        ->default_val("json")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "write to this path instead of stdout");
}

SuiteConfig make_config(const Options& o, long default_max_n, long default_disc_s) {
    SuiteConfig cfg;
    cfg.fp = resolve_field(o);
    cfg.max_n = o.max_n >= 0 ? o.max_n : default_max_n;
    cfg.disc_s = o.disc_s >= 0 ? o.disc_s : default_disc_s;
    cfg.tier = o.tier;
    return cfg;
}

void fill_params(Certificate& cert, const SuiteConfig& cfg) {
    cert.params = {{"p", std::to_string(cfg.fp.p)},       {"f", std::to_string(cfg.fp.f)},
                   {"e", std::to_string(cfg.fp.e)},       {"q", std::to_string(cfg.fp.q)},
                   {"max_n", std::to_string(cfg.max_n)},  {"disc_s", std::to_string(cfg.disc_s)},
                   {"tier", std::to_string(cfg.tier)}};
}

int emit(const Certificate& cert, const Options& o) {
    std::string text = o.format == "csv" ? cert.to_csv() : cert.to_json();
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) {
            std::cerr << "ltv: cannot open output file " << o.out << "\n";
            return 3;
        }
        f << text;
    }
    return cert.exit_code();
}

int cmd_coeffs(const Options& o) {
    SuiteConfig cfg = make_config(o, 200, 4);
    Certificate cert;
    cert.command = "coeffs";
    fill_params(cert, cfg);
    cert.table_columns = {"kind", "n", "k", "val"};
    for (long n = 0; n <= cfg.max_n; ++n) {
        for (auto kind : {CoeffKind::c, CoeffKind::d}) {
            auto v = coeff_val(kind, n, cfg.fp.q);
            if (!v) continue;
            auto rep = rep_decompose(n, cfg.fp.q);
            long k = (kind == CoeffKind::c && n == 0) ? -1 : rep->k;
            cert.table_rows.push_back({kind == CoeffKind::c ? "c" : "d", std::to_string(n),
                                       k < 0 ? "-" : std::to_string(k), std::to_string(*v)});
        }
    }
    cert.checks = suites::coefficients(cfg);
    return emit(cert, o);
}

int cmd_action(const Options& o) {
    SuiteConfig cfg = make_config(o, 8, 4);
    Certificate cert;
    cert.command = "action";
    fill_params(cert, cfg);
    cert.table_columns = {"n", "deg", "ord_x1", "gauss0", "Q_n"};
    TorusContext ctx(cfg.fp);
    for (long n = 0; n <= cfg.max_n; ++n) {
        const XPoly& Q = ctx.Q(n);
        auto ord = Q.is_zero() ? std::nullopt : ord_at_one_opt(Q, OrdMode::exact, cfg.fp);
        cert.table_rows.push_back({std::to_string(n), std::to_string(Q.degree()),
                                   ord ? std::to_string(*ord) : "inf",
                                   gauss_val(Q, Center::origin, RationalVal(0), cfg.fp).str(),
                                   Q.str()});
    }
    auto checks = suites::structure_suite(cfg);
    auto oracle_checks = suites::oracle_suite(cfg);
    checks.insert(checks.end(), oracle_checks.begin(), oracle_checks.end());
    cert.checks = std::move(checks);
    return emit(cert, o);
}

int cmd_decomp(const Options& o) {
    SuiteConfig cfg = make_config(o, 8, 4);
    Certificate cert;
    cert.command = "decomp";
    fill_params(cert, cfg);
    cert.table_columns = {"n", "s", "ord_mod_pi", "ord_exact", "R_bound", "Q_ns"};
    TorusContext tor(cfg.fp);
    DecompContext dec(tor);
    long nmax = std::min(cfg.max_n, cfg.decomp_max_n());
    for (long n = 0; n <= nmax; ++n)
        for (long s = 0; s <= n; ++s) {
            const XPoly& Q = dec.Qns(n, s);
            auto om = Q.is_zero() ? std::nullopt : ord_at_one_opt(Q, OrdMode::mod_pi, cfg.fp);
            auto oe = Q.is_zero() ? std::nullopt : ord_at_one_opt(Q, OrdMode::exact, cfg.fp);
            cert.table_rows.push_back(
                {std::to_string(n), std::to_string(s), om ? std::to_string(*om) : "inf",
                 oe ? std::to_string(*oe) : "inf",
                 std::to_string(r_func(ord_bound_arg(n, s, cfg.fp.q), cfg.fp.q)), Q.str()});
        }
    cert.checks = suites::decomposition_suite(cfg);
    return emit(cert, o);
}

int cmd_rfunc(const Options& o) {
    SuiteConfig cfg = make_config(o, 100000, 4);
    cfg.rfunc_max_n = cfg.max_n;
    Certificate cert;
    cert.command = "rfunc";
    fill_params(cert, cfg);
    cert.table_columns = {"n", "R"};
    for (long n = 0; n <= std::min<long>(cfg.max_n, 2000); ++n)
        cert.table_rows.push_back({std::to_string(n), std::to_string(r_func(n, cfg.fp.q))});
    cert.checks = suites::rfunc_suite(cfg);
    return emit(cert, o);
}

int cmd_norms(const Options& o) {
    SuiteConfig cfg = make_config(o, 12, 5);
    Certificate cert;
    cert.command = "norms";
    fill_params(cert, cfg);
    cert.table_columns = {"quantity", "s", "computed", "closed_form"};
    long smax = std::min<long>(cfg.disc_s, 5);
    for (long s = 0; s <= smax; ++s) {
        for (auto [kind, label] : {std::pair<SeriesKind, const char*>{SeriesKind::phi0, "phi0"},
                                   {SeriesKind::phi1, "phi1"},
                                   {SeriesKind::phi0_phi1, "phi0*phi1"}})
            cert.table_rows.push_back({label, std::to_string(s),
                                       series_disc_norm(kind, s, cfg.fp).val.str(),
                                       closed_form_sup(kind, s, cfg.fp.q).str()});
        if (s <= 4)
            for (auto [which, label] :
                 {std::pair<OpQuantity, const char*>{OpQuantity::phi0_sq, "pi^{s+1}phi0^2"},
                  {OpQuantity::phi1_sq, "pi^s phi1^2"},
                  {OpQuantity::phi0_phi1, "pi^s phi0*phi1"}})
                cert.table_rows.push_back({label, std::to_string(s),
                                           operator_estimate(which, s, cfg.fp).str(),
                                           closed_form_operator(which, s, cfg.fp.q).str()});
    }
    cert.checks = suites::norms_suite(cfg);
    return emit(cert, o);
}

int cmd_lattices(const Options& o) {
    SuiteConfig cfg = make_config(o, 12, 6);
    Certificate cert;
    cert.command = "lattices";
    fill_params(cert, cfg);
    cert.table_columns = {"lattice", "s", "x1", "x2", "y1", "y2"};
    for (long s = 0; s <= cfg.disc_s; ++s) {
        for (auto [kind, label] : {std::pair<LatticeKind, const char*>{LatticeKind::h_s, "h_s"},
                                   {LatticeKind::g_s, "g_s"}}) {
            auto v = lattice_vals(kind, s, cfg.fp.p);
            cert.table_rows.push_back({label, std::to_string(s), v[0].str(), v[1].str(),
                                       v[2].str(), v[3].str()});
        }
        if (s == 0) {
            auto v = lattice_vals(LatticeKind::h0_prime, 0, cfg.fp.p);
            cert.table_rows.push_back(
                {"h0'", "0", v[0].str(), v[1].str(), v[2].str(), v[3].str()});
        }
    }
    cert.checks = suites::quaternion_suite(cfg);
    return emit(cert, o);
}

int cmd_verify(const Options& o) {
    SuiteConfig cfg = make_config(o, 12, 5);
    Certificate cert;
    cert.command = "verify";
    fill_params(cert, cfg);
    cert.threads = thread_cap();
    cert.checks = run_tasks(verify_tasks(cfg), cert.threads);
    return emit(cert, o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of the torus action on a height-2 deformation disc"};
    app.require_subcommand(1);

    Options o_coeffs, o_action, o_decomp, o_rfunc, o_norms, o_lattices, o_verify;
    add_common(app.add_subcommand("coeffs", "period-map coefficient valuation tables"), o_coeffs);
    add_common(app.add_subcommand("action", "action-coefficient polynomials Q_n"), o_action);
    add_common(app.add_subcommand("decomp", "layer polynomials Q_{n,s}"), o_decomp);
    add_common(app.add_subcommand("rfunc", "digit weight function R and its lemma suite"),
               o_rfunc);
    add_common(app.add_subcommand("norms", "critical-disc sup norms and operator estimates"),
               o_norms);
    add_common(app.add_subcommand("lattices", "Lie-lattice generator valuations"), o_lattices);
    add_common(app.add_subcommand("verify", "full verification suite by tier"), o_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (app.got_subcommand("coeffs")) return cmd_coeffs(o_coeffs);
        if (app.got_subcommand("action")) return cmd_action(o_action);
        if (app.got_subcommand("decomp")) return cmd_decomp(o_decomp);
        if (app.got_subcommand("rfunc")) return cmd_rfunc(o_rfunc);
        if (app.got_subcommand("norms")) return cmd_norms(o_norms);
        if (app.got_subcommand("lattices")) return cmd_lattices(o_lattices);
        if (app.got_subcommand("verify")) return cmd_verify(o_verify);
    } catch (const std::invalid_argument& e) {
        std::cerr << "ltv: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "ltv: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
