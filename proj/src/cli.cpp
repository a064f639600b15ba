#include "branchlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "branchlab/branches.hpp"
#include "branchlab/identities.hpp"
#include "branchlab/polycore.hpp"
#include "branchlab/quadrature.hpp"
#include "branchlab/roots.hpp"
#include "branchlab/serialize.hpp"
#include "branchlab/series.hpp"
#include "branchlab/verify.hpp"

namespace branchlab {

namespace {

double parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

std::string trim(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

// Tolerance resolution: explicit flag, then BRANCHLAB_TOL, then the module default.
struct Tolerance {
    double value;
    std::string source;
};

Tolerance resolve_tol(const CLI::Option* flag, double flag_value, const std::optional<std::string>& env,
                      double fallback) {
    if (flag && flag->count() > 0) return {flag_value, "flag"};
    if (env) {
        const double v = parse_double(trim(*env));
        if (!(v > 0.0)) throw std::invalid_argument("BRANCHLAB_TOL must be positive");
        return {v, "env"};
    }
    return {fallback, "default"};
}

AuxKind aux_kind_from_string(std::string_view name) {
    for (AuxKind a : {AuxKind::power_j, AuxKind::reciprocal_shift, AuxKind::inv_one_plus_w, AuxKind::log_ratio})
        if (to_string(a) == name) return a;
    throw DomainError("unknown auxiliary expansion: " + std::string(name));
}

struct Document {
    std::string command;
    Json inputs = Json::object();
    Json result = Json::object();
    Json diagnostics = Json::object();
    std::string csv_rows;
    bool check_failed = false;

    Json to_json() const {
        return {{"command", command}, {"inputs", inputs}, {"result", result}, {"diagnostics", diagnostics}};
    }
};

std::string render(const Document& d, const std::string& format) {
    if (format == "csv") return to_csv(d.result, d.csv_rows);
    if (format == "text") {
        if (d.command == "verify") {
            std::ostringstream out;
            for (const Json& c : d.result["checks"])
                out << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << "  "
                    << c["detail"].get<std::string>() << "\n";
            out << (d.result["passed"].get<bool>() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
            return out.str();
        }
        return to_text(d.to_json());
    }
    return d.to_json().dump(2) + "\n";
}

Json error_json(const std::string& command, const std::string& kind, const std::string& message) {
    return {{"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

Complex parse_complex(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    const char last = s.back();
    if (last != 'i' && last != 'j') return {parse_double(s), 0.0};

    const std::string body = s.substr(0, s.size() - 1);
    // The imaginary part starts at the last sign not belonging to an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 0;) {
        if ((body[i] == '+' || body[i] == '-') && !(i > 0 && (body[i - 1] == 'e' || body[i - 1] == 'E'))) {
            split = i;
            break;
        }
    }
    std::string re_part, im_part;
    if (split == std::string::npos) {
        im_part = body;
    } else {
        re_part = body.substr(0, split);
        im_part = body.substr(split);
    }
    double im = 0.0;
    if (im_part.empty() || im_part == "+")
        im = 1.0;
    else if (im_part == "-")
        im = -1.0;
    else
        im = parse_double(im_part);
    const double re = re_part.empty() ? 0.0 : parse_double(re_part);
    return {re, im};
}

CliOutcome run_cli(const std::vector<std::string>& args, std::optional<std::string> tol_env) {
    CLI::App app{"Branches of the Lambert W function: evaluation, series, identities and polynomial roots",
                 "branchlab"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));

    Document doc;
    std::function<void()> action;

    // eval
    long ev_k = 0;
    std::string ev_x, ev_method = "halley", ev_case = "1";
    double ev_tol = 0.0;
    auto* eval = app.add_subcommand("eval", "Evaluate W_k(x)");
    eval->add_option("-k", ev_k, "Branch index")->required();
    eval->add_option("-x", ev_x, "Argument, e.g. 2+1i")->required();
    eval->add_option("--method", ev_method, "halley | series | integral")
        ->check(CLI::IsMember({"halley", "series", "integral"}));
    eval->add_option("--case", ev_case, "Integral case for --method integral")->check(CLI::IsMember({"1", "2"}));
    auto* ev_tol_opt = eval->add_option("--tol", ev_tol, "Residual tolerance");
    eval->callback([&] {
        action = [&] {
            const Complex x = parse_complex(ev_x);
            const Tolerance tol = resolve_tol(ev_tol_opt, ev_tol, tol_env, PrecisionConfig{}.tol);
            doc.command = "eval";
            doc.inputs = {{"k", ev_k}, {"x", to_json(x)}, {"method", ev_method}, {"tol", tol.value},
                          {"tol_source", tol.source}};
            const BranchStatus st = branch_exists(ev_k, x);
            doc.diagnostics["equation_exists"] = st.exists;
            doc.diagnostics["equation_case"] = to_string(st.equation_case);
            doc.diagnostics["value_case"] = to_string(st.value_case);
            if (ev_method == "halley") {
                doc.result = to_json(lambert_w(ev_k, x, {tol.value, PrecisionConfig{}.max_iter}));
            } else if (ev_method == "integral") {
                doc.inputs["case"] = ev_case;
                QuadConfig qc;
                qc.tol = tol.value;
                IntegralDetail detail;
                doc.result = to_json(integral_w(ev_k, x, integral_case_from_string(ev_case), qc, &detail));
                doc.diagnostics["integral"] = to_json(detail);
            } else if (ev_k == 0 && std::abs(x) <= kW0SeriesRadius) {
                doc.result = to_json(w0_series(x, 80));
            } else {
                const SeriesFrame f = make_frame(ev_k, x, SeriesVariant::two_k_pi_i_plus_logx);
                const SeriesCoefficients c(120);
                const SeriesResult s = w_series(f, c);
                EvalReport r{s.value, defining_residual(s.value, x),
                             ek_residual(certifying_equation(ev_k, x), s.value, x), EvalMethod::series_asymptotic,
                             s.terms_used};
                doc.result = to_json(r);
                doc.diagnostics["frame"] = to_json(f);
                doc.diagnostics["series"] = to_json(s);
            }
        };
    });

    // series
    long se_k = 0;
    std::string se_x, se_variant = "two_k_pi_i_plus_logx", se_aux, se_K;
    std::size_t se_N = 120;
    long se_j = 1;
    bool se_divergent = false;
    auto* series = app.add_subcommand("series", "Convergent branch series in a chosen frame");
    series->add_option("-k", se_k, "Branch index")->required();
    series->add_option("-x", se_x, "Argument")->required();
    series->add_option("--variant", se_variant,
                       "general | two_k_pi_i | two_k_pi_i_plus_logx | k_minus1_real | shifted_K1");
    series->add_option("-N", se_N, "Maximum number of terms");
    series->add_option("--K", se_K, "K for the general variant");
    series->add_option("--aux", se_aux, "power_j | reciprocal_shift | inv_one_plus_w | log_ratio");
    series->add_option("--j", se_j, "Power for --aux power_j");
    series->add_flag("--allow-divergent", se_divergent, "Sum even when the convergence predicate fails");
    series->callback([&] {
        action = [&] {
            const Complex x = parse_complex(se_x);
            const SeriesVariant v = series_variant_from_string(se_variant);
            std::optional<Complex> general_K;
            if (!se_K.empty()) general_K = parse_complex(se_K);
            doc.command = "series";
            doc.inputs = {{"k", se_k}, {"x", to_json(x)}, {"variant", se_variant}, {"N", se_N},
                          {"aux", se_aux.empty() ? Json(nullptr) : Json(se_aux)}, {"j", se_j},
                          {"allow_divergent", se_divergent}};
            if (general_K) doc.inputs["K"] = to_json(*general_K);
            const SeriesFrame f = make_frame(se_k, x, v, general_K);
            SeriesOptions opt;
            opt.N = se_N;
            opt.allow_divergent = se_divergent;
            const SeriesCoefficients c(std::max<std::size_t>(se_N, 1));
            SeriesResult s;
            Complex reference;
            const Complex w = lambert_w(se_k, x).value;
            if (!se_aux.empty()) {
                const AuxSpec spec{aux_kind_from_string(se_aux), se_j};
                s = aux_series(f, spec, c, opt);
                reference = aux_direct(f, spec, w);
            } else if (v == SeriesVariant::shifted_K1) {
                s = w_series_shifted(f, c, opt);
                reference = w;
            } else {
                s = w_series(f, c, opt);
                reference = w;
            }
            doc.result = to_json(s);
            doc.diagnostics["frame"] = to_json(f);
            doc.diagnostics["reference"] = to_json(reference);
            doc.diagnostics["abs_err"] = std::abs(s.value - reference);
            doc.diagnostics["bound_2(1+|M|)<|K|"] = series_bound_holds(f);
        };
    });

    // poly
    std::string po_family;
    std::size_t po_n = 0;
    long po_k = 1;
    auto* poly = app.add_subcommand("poly", "Exact Lambert polynomials");
    poly->add_option("--family", po_family, "L | Lk | M | P")->required()->check(CLI::IsMember({"L", "Lk", "M", "P"}));
    poly->add_option("-n,--n", po_n, "Index")->required();
    poly->add_option("--k", po_k, "Power for the Lk family");
    poly->callback([&] {
        action = [&] {
            doc.command = "poly";
            doc.inputs = {{"family", po_family}, {"n", po_n}};
            RationalPoly p;
            const StirlingTable table(po_n + 1);
            if (po_family == "L") {
                p = lambert_L(po_n, table);
            } else if (po_family == "Lk") {
                doc.inputs["k"] = po_k;
                p = lambert_L_power(po_n, po_k, table);
            } else if (po_family == "M") {
                if (po_n < 1) throw DomainError("poly: M_n is defined for n >= 1");
                p = lambert_M(po_n);
            } else {
                p = shifted_P(po_n, table);
            }
            doc.result = to_json(p);
            doc.csv_rows = "rows";
            Json rows = Json::array();
            for (std::size_t i = 0; i < p.coeffs().size(); ++i)
                rows.push_back({{"power", i}, {"coefficient", p.coeffs()[i].get_str()}});
            doc.result["rows"] = rows;
        };
    });

    // identity
    std::string id_name, id_x, id_t = "0";
    long id_K = 1000;
    bool id_asym = false, id_acc = false;
    auto* identity = app.add_subcommand("identity", "Symmetric branch sums and products against closed forms");
    identity->add_option("--id", id_name, "Identity name, e.g. PINELIS")->required();
    identity->add_option("-x", id_x, "Argument")->required();
    identity->add_option("-t", id_t, "Shift parameter");
    identity->add_option("-K,--K", id_K, "Truncation |k| <= K");
    identity->add_flag("--asymmetric", id_asym, "Truncate over [-K, K+1]");
    identity->add_flag("--accelerate", id_acc, "Two-point extrapolation from K and 2K");
    identity->callback([&] {
        action = [&] {
            const IdentityId id = identity_from_string(id_name);
            const Complex x = parse_complex(id_x);
            const Complex t = parse_complex(id_t);
            doc.command = "identity";
            doc.inputs = {{"id", id_name}, {"x", to_json(x)}, {"t", to_json(t)}, {"K", id_K},
                          {"asymmetric", id_asym}, {"accelerate", id_acc}};
            SumOptions opt;
            opt.asymmetric = id_asym;
            opt.accelerate = id_acc;
            const SumReport r = id == IdentityId::CONST_SUM && !id_asym && !id_acc ? constant_sum(x, id_K)
                                                                                 : symmetric_sum(id, x, t, id_K, opt);
            doc.result = to_json(r);
            doc.csv_rows = "err_trend";
            doc.diagnostics["uses_t"] = uses_t(id);
        };
    });

    // integral
    long in_k = 0;
    std::string in_x, in_case = "1";
    double in_tol = 0.0, in_trunc = QuadConfig{}.truncation;
    std::size_t in_levels = QuadConfig{}.level_max;
    auto* integral = app.add_subcommand("integral", "Integral representation of W_k(x)");
    integral->add_option("-k", in_k, "Branch index")->required();
    integral->add_option("-x", in_x, "Argument")->required();
    integral->add_option("--case", in_case, "1 | 2")->check(CLI::IsMember({"1", "2", "case1", "case2"}));
    auto* in_tol_opt = integral->add_option("--tol", in_tol, "Quadrature tolerance");
    integral->add_option("--level-max", in_levels, "Maximum refinement level");
    integral->add_option("--truncation", in_trunc, "Half-width of the u range");
    integral->callback([&] {
        action = [&] {
            const Complex x = parse_complex(in_x);
            const Tolerance tol = resolve_tol(in_tol_opt, in_tol, tol_env, QuadConfig{}.tol);
            QuadConfig qc{in_levels, tol.value, in_trunc};
            doc.command = "integral";
            doc.inputs = {{"k", in_k}, {"x", to_json(x)}, {"case", in_case}, {"tol", tol.value},
                          {"tol_source", tol.source}, {"level_max", in_levels}, {"truncation", in_trunc}};
            IntegralDetail detail;
            const EvalReport r = integral_w(in_k, x, integral_case_from_string(in_case), qc, &detail);
            doc.result = to_json(r);
            doc.diagnostics = to_json(detail);
            doc.diagnostics["lambert_w_difference"] = std::abs(r.value - lambert_w(in_k, x).value);
        };
    });

    // jensen
    long je_K = 10;
    double je_x = 1.0, je_tol = 0.0;
    auto* jensen = app.add_subcommand("jensen", "Jensen-formula identity over |w| = (2K+1) pi");
    jensen->add_option("-K,--K", je_K, "Circle index")->required();
    jensen->add_option("-x", je_x, "Positive real argument")->required();
    auto* je_tol_opt = jensen->add_option("--tol", je_tol, "Quadrature tolerance");
    jensen->callback([&] {
        action = [&] {
            const Tolerance tol = resolve_tol(je_tol_opt, je_tol, tol_env, QuadConfig{}.tol);
            QuadConfig qc;
            qc.tol = tol.value;
            doc.command = "jensen";
            doc.inputs = {{"K", je_K}, {"x", je_x}, {"tol", tol.value}, {"tol_source", tol.source}};
            const JensenReport r = jensen_check(je_K, je_x, qc);
            doc.result = to_json(r);
            const double rho = (2.0 * static_cast<double>(je_K) + 1.0) * kPi;
            doc.diagnostics["asymptotic_main_term"] = jensen_asymptotic(rho, je_x);
            doc.diagnostics["asymptotic_gap"] = std::abs(r.integral.value - jensen_asymptotic(rho, je_x));
        };
    });

    // roots
    std::size_t ro_n = 0, ro_nlo = 50, ro_nhi = 200, ro_step = 10, ro_jmax = 0;
    long ro_k = 1;
    bool ro_fit = false;
    double ro_tol = 0.0;
    auto* roots = app.add_subcommand("roots", "Real roots of L_n and largest-root asymptotics");
    roots->add_option("-n,--n", ro_n, "Index of L_n");
    roots->add_flag("--fit", ro_fit, "Estimate C_0(k) from the largest roots");
    roots->add_option("--k", ro_k, "Family index for --fit");
    roots->add_option("--n-lo", ro_nlo, "Smallest n for --fit");
    roots->add_option("--n-hi", ro_nhi, "Largest n for --fit");
    roots->add_option("--step", ro_step, "Step in n for --fit");
    roots->add_option("--j-max", ro_jmax, "Compare the j_max largest roots with n/j + H");
    auto* ro_tol_opt = roots->add_option("--tol", ro_tol, "Bisection tolerance");
    roots->callback([&] {
        action = [&] {
            doc.command = "roots";
            if (ro_fit) {
                doc.inputs = {{"fit", true}, {"k", ro_k}, {"n_lo", ro_nlo}, {"n_hi", ro_nhi}, {"step", ro_step}};
                const FitReport f = max_root_fit(ro_k, ro_nlo, ro_nhi, ro_step);
                doc.result = to_json(f);
                doc.csv_rows = "table";
                return;
            }
            if (ro_n < 1) throw DomainError("roots: --n is required and must be at least 1");
            if (ro_jmax > 0) {
                doc.inputs = {{"n", ro_n}, {"j_max", ro_jmax}};
                Json rows = Json::array();
                for (const JthRootRow& row : jth_root_check(ro_n, ro_jmax)) rows.push_back(to_json(row));
                doc.result = {{"n", ro_n}, {"rows", rows}};
                doc.csv_rows = "rows";
                return;
            }
            const Tolerance tol = resolve_tol(ro_tol_opt, ro_tol, tol_env, 1e-12);
            doc.inputs = {{"n", ro_n}, {"tol", tol.value}, {"tol_source", tol.source}};
            doc.result = to_json(real_roots(ro_n, tol.value));
            doc.csv_rows = "roots";
            doc.diagnostics["upper_bound"] = max_root_main_term(ro_n, 1);
        };
    });

    // verify
    std::size_t ve_nmax = 25;
    long ve_K = 1000;
    auto* verify = app.add_subcommand("verify", "Run the aggregate pass/fail checks");
    verify->add_option("--n-max", ve_nmax, "Largest n for the exact polynomial identities");
    verify->add_option("-K,--K", ve_K, "Truncation for the branch identities");
    verify->callback([&] {
        action = [&] {
            doc.command = "verify";
            doc.inputs = {{"n_max", ve_nmax}, {"K", ve_K}};
            VerifyOptions opt;
            opt.n_max = ve_nmax;
            opt.K = ve_K;
            const VerifyReport r = verify_all(opt);
            Json checks = Json::array();
            for (const VerifyCheck& c : r.checks)
                checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            doc.result = {{"passed", r.passed()}, {"checks", checks}};
            doc.csv_rows = "checks";
            doc.check_failed = !r.passed();
        };
    });

    CliOutcome outcome;
    std::ostringstream out, err;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        outcome.out = out.str();
        outcome.err = err.str();
        if (code != 0) {
            outcome.err += app.help();
            outcome.exit_code = kExitUsage;
        }
        return outcome;
    }

    const std::string command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    try {
        action();
        outcome.out = render(doc, format);
        outcome.exit_code = doc.check_failed ? kExitCheckFailed : kExitOk;
    } catch (const DomainError& e) {
        outcome.err = error_json(command, "domain", e.what()).dump() + "\n";
        outcome.exit_code = kExitDomain;
    } catch (const ConvergenceError& e) {
        Json j = error_json(command, "convergence", e.what());
        j["error"]["best_residual"] = e.best_residual();
        outcome.err = j.dump() + "\n";
        outcome.exit_code = kExitConvergence;
    } catch (const std::invalid_argument& e) {
        outcome.err = error_json(command, "parse", e.what()).dump() + "\n" + app.help();
        outcome.exit_code = kExitUsage;
    }
    return outcome;
}

}  // namespace branchlab
