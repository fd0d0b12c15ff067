#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ramasum/identity_suite.hpp"
#include "ramasum/ramanujan.hpp"
#include "ramasum/special_functions.hpp"

namespace ramasum {

namespace {

struct CliConfig {
    long prec_bits = 256;
    std::string tol = "1e-20";
    std::string output = "text";
};

double tol_log10(const std::string& tol) {
    // tolerances are decimal strings like 1e-20 or 0.0001
    Rational q = rational_from_string(tol);
    if (sgn(q) <= 0) throw DomainError("tolerance must be positive");
    return std::log10(q.get_d());
}

void apply_config_file(const std::string& path, CliConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = line;
        size_t hash = s.find('#');
        if (hash != std::string::npos) s.erase(hash);
        if (s.find_first_not_of(" \t\r") == std::string::npos) continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string t) {
            size_t b = t.find_first_not_of(" \t\r");
            size_t e = t.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
        };
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key == "prec_bits")
            cfg.prec_bits = std::stol(value);
        else if (key == "tol")
            cfg.tol = value;
        else if (key == "output")
            cfg.output = value;
        else
            throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'");
    }
}

int value_digits(const PrecisionContext& ctx) {
    return std::max(10, static_cast<int>(static_cast<double>(ctx.bits) * 0.30103) - 2);
}

void print_result(const RamanujanResult& r, const CliConfig& cfg, const PrecisionContext& ctx,
                  std::ostream& out) {
    int digits = value_digits(ctx);
    if (cfg.output == "json") {
        nlohmann::json j;
        j["value"] = r.value.to_string(digits);
        j["error_estimate"] = r.error_estimate.to_string(3);
        j["strategy"] = to_string(r.strategy);
        j["diagnostics"] = r.diagnostics;
        out << j.dump(2) << "\n";
        return;
    }
    out << "value          = " << r.value.to_string(digits) << "\n";
    out << "error_estimate = " << r.error_estimate.to_string(3) << "\n";
    out << "strategy       = " << to_string(r.strategy) << "\n";
    for (const auto& [k, v] : r.diagnostics) out << "  " << k << " = " << v << "\n";
}

}  // namespace

int cli_execute(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"ramasum - Ramanujan summation of divergent series, Borel sums, and the "
                 "identity verification suite"};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig cfg;
    if (const char* env = std::getenv("RAMASUM_PREC_BITS")) {
        try {
            cfg.prec_bits = std::stol(env);
        } catch (...) {
            err << "invalid RAMASUM_PREC_BITS\n";
            return 1;
        }
    }
    std::string config_path;
    long flag_bits = 0;
    std::string flag_tol, flag_output;
    app.add_option("--config", config_path, "config file with key = value lines");
    app.add_option("--prec-bits", flag_bits, "working binary precision (>= 64)");
    app.add_option("--tol", flag_tol, "target tolerance, e.g. 1e-20");
    app.add_option("--output", flag_output, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* sum = app.add_subcommand("sum", "Ramanujan summation of a series term a(n)");
    std::string term, zs;
    sum->add_option("--term", term, "series term, e.g. \"H(n)*exp(-n*z)\"")->required();
    sum->add_option("--z", zs, "value of the parameter z");

    auto* borel = app.add_subcommand("borel", "Borel summation of sum c_n / z^{n+1}");
    std::string series_name = "alt-factorial", coeffs, bz;
    unsigned pade_m = 0;
    borel->add_option("--series", series_name,
                      "named series: alt-factorial | ones | zeta-psi");
    borel->add_option("--coeffs", coeffs, "comma-separated rational c_n prefix (uses Pade)");
    borel->add_option("--pade", pade_m, "diagonal Pade order for --coeffs");
    borel->add_option("--z", bz, "evaluation point z > 0")->required();

    auto* laplace = app.add_subcommand("laplace", "numerical Laplace transform L(f)(z)");
    std::string fname = "inv1p", lz;
    laplace->add_option("--f", fname, "kernel: one | inv1p | psi1p | log1p");
    laplace->add_option("--z", lz, "evaluation point z > 0")->required();

    auto* verify = app.add_subcommand("verify", "run the identity verification suite");
    std::string only, json_path;
    verify->add_option("--only", only, "restrict to check ids with this prefix");
    verify->add_option("--json", json_path, "write the JSON report to this file");

    auto* gf = app.add_subcommand("zeta-prime-gf",
                                  "evaluate sum_k z^k zeta'(-k)/k! with a remainder estimate");
    std::string gz;
    unsigned terms = 32;
    gf->add_option("--z", gz, "evaluation point, |z| < 2 pi")->required();
    gf->add_option("--terms", terms, "number of terms K");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (!config_path.empty()) apply_config_file(config_path, cfg);
        if (flag_bits > 0) cfg.prec_bits = flag_bits;
        if (!flag_tol.empty()) cfg.tol = flag_tol;
        if (!flag_output.empty()) cfg.output = flag_output;
        PrecisionContext ctx(cfg.prec_bits, tol_log10(cfg.tol));

        if (*sum) {
            std::optional<BigReal> z;
            if (!zs.empty()) z = BigReal::from_string(zs, ctx);
            RamanujanResult r = ramanujan_sum(parse(term), z, ctx);
            print_result(r, cfg, ctx, out);
            return 0;
        }

        if (*borel) {
            BigReal z = BigReal::from_string(bz, ctx);
            BorelSeries bs;
            LaplaceConfig lcfg;
            if (!coeffs.empty()) {
                std::vector<Rational> rc;
                std::stringstream ss(coeffs);
                std::string tok;
                while (std::getline(ss, tok, ',')) rc.push_back(rational_from_string(tok));
                unsigned m = pade_m > 0 ? pade_m : static_cast<unsigned>((rc.size() - 1) / 2);
                bs.rational_coeffs = rc;
                bs.prefix_len = static_cast<unsigned>(rc.size());
                bs.coeff = [rc](unsigned long n, const PrecisionContext& c) {
                    return n < rc.size() ? to_bigreal(rc[n], c) : BigReal::zero(c);
                };
                bs.continuation = BorelSeries::PadeDiagonal{m};
            } else if (series_name == "alt-factorial") {
                bs.coeff = [](unsigned long n, const PrecisionContext& c) {
                    BigReal f = to_bigreal(Rational(factorial(n)), c);
                    return n % 2 == 0 ? f : -f;
                };
                bs.continuation = BorelSeries::ClosedForm{
                    [ctx](const BigReal& x) {
                        return BigReal::from_long(1, ctx) / (x + BigReal::from_long(1, ctx));
                    },
                    GrowthModel::constant()};
            } else if (series_name == "ones") {
                bs.coeff = [](unsigned long, const PrecisionContext& c) {
                    return BigReal::from_long(1, c);
                };
                bs.continuation = BorelSeries::ClosedForm{
                    [ctx](const BigReal& x) { return exp(x, ctx); },
                    GrowthModel::exponential(1.0)};
            } else if (series_name == "zeta-psi") {
                bs.coeff = [](unsigned long n, const PrecisionContext& c) {
                    if (n == 0) return -euler_gamma(c);
                    BigReal f = to_bigreal(Rational(factorial(n)), c) *
                                riemann_zeta_int(n + 1, c);
                    return n % 2 == 1 ? f : -f;
                };
                bs.continuation = BorelSeries::ClosedForm{
                    [ctx](const BigReal& x) { return digamma1p_plus_gamma(x, ctx); },
                    GrowthModel::logarithmic()};
            } else {
                err << "unknown --series '" << series_name << "'\n";
                return 1;
            }
            BigReal v = borel_sum(bs, z, lcfg, ctx);
            if (cfg.output == "json") {
                nlohmann::json j;
                j["value"] = v.to_string(value_digits(ctx));
                j["error_estimate"] = v.err().to_string(3);
                out << j.dump(2) << "\n";
            } else {
                out << "value          = " << v.to_string(value_digits(ctx)) << "\n";
                out << "error_estimate = " << v.err().to_string(3) << "\n";
            }
            return 0;
        }

        if (*laplace) {
            BigReal z = BigReal::from_string(lz, ctx);
            LaplaceConfig lcfg;
            RealFn f;
            if (fname == "one") {
                f = [ctx](const BigReal&) { return BigReal::from_long(1, ctx); };
            } else if (fname == "inv1p") {
                f = [ctx](const BigReal& x) {
                    return BigReal::from_long(1, ctx) / (x + BigReal::from_long(1, ctx));
                };
            } else if (fname == "psi1p") {
                f = [ctx](const BigReal& x) {
                    return polygamma(0, x + BigReal::from_long(1, ctx), ctx);
                };
                lcfg.tail_bound_model = GrowthModel::logarithmic();
            } else if (fname == "log1p") {
                f = [ctx](const BigReal& x) {
                    return log(x + BigReal::from_long(1, ctx), ctx);
                };
                lcfg.tail_bound_model = GrowthModel::logarithmic();
            } else {
                err << "unknown --f '" << fname << "'\n";
                return 1;
            }
            BigReal v = laplace_transform(f, z, lcfg, ctx);
            if (cfg.output == "json") {
                nlohmann::json j;
                j["value"] = v.to_string(value_digits(ctx));
                j["error_estimate"] = v.err().to_string(3);
                out << j.dump(2) << "\n";
            } else {
                out << "value          = " << v.to_string(value_digits(ctx)) << "\n";
                out << "error_estimate = " << v.err().to_string(3) << "\n";
            }
            return 0;
        }

        if (*verify) {
            auto [rows, summary] = run_all(only, ctx);
            for (const auto& r : rows) {
                out << "[" << to_string(r.status) << "] " << r.check_id;
                for (const auto& [k, v] : r.params) out << " " << k << "=" << v;
                out << "  diff=" << r.abs_diff.to_string(3)
                    << " tol=" << r.tolerance.to_string(2) << "\n";
            }
            out << "summary: total=" << summary.total << " passed=" << summary.passed
                << " failed=" << summary.failed << " hypotheses=" << summary.hypotheses << "\n";
            if (!json_path.empty()) {
                std::ofstream jf(json_path);
                if (!jf) {
                    err << "cannot write '" << json_path << "'\n";
                    return 1;
                }
                jf << report_to_json(rows, summary) << "\n";
            }
            return summary.failed > 0 ? 2 : 0;
        }

        if (*gf) {
            BigReal z = BigReal::from_string(gz, ctx);
            PrecisionContext work(ctx.bits + 32, ctx.target_tol_log10);
            BigReal zw = BigReal::zero(work);
            mpfr_set(zw.raw_mut(), z.raw(), MPFR_RNDN);
            BigReal acc = BigReal::zero(work);
            BigReal wp = BigReal::from_long(1, work);
            BigReal last = BigReal::zero(work);
            for (unsigned k = 0; k < terms; ++k) {
                BigReal t = wp * zeta_prime_neg(static_cast<long>(k), work);
                acc += t;
                last = abs(t);
                wp = wp * zw / BigReal::from_long(k + 1, work);
            }
            // remainder of the generating function: ratio approaching |z|/(2 pi)
            BigReal r = abs(zw) / (BigReal::from_long(2, work) * pi(work));
            BigReal rem = last * r / (BigReal::from_long(1, work) - r);
            if (cfg.output == "json") {
                nlohmann::json j;
                j["value"] = acc.to_string(value_digits(ctx));
                j["remainder_estimate"] = rem.to_string(3);
                j["terms"] = terms;
                out << j.dump(2) << "\n";
            } else {
                out << "value              = " << acc.to_string(value_digits(ctx)) << "\n";
                out << "remainder_estimate = " << rem.to_string(3) << "\n";
                out << "terms              = " << terms << "\n";
            }
            return 0;
        }
    } catch (const CLI::Error& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 1;
}

}  // namespace ramasum
