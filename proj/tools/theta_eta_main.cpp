// theta-eta: evaluate theta functions and run the verification suites from
// the command line, with JSON output for scripted use.
//
// Exit codes: 0 success, 1 a verification suite ran and failed, 2 malformed
// input, 3 numeric failure, 4 precondition violation.

#include "thetadiv/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace thetadiv;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitPrecondition = 4;

std::optional<Complex> parse_complex(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto ipos = text.find('i');
    if (ipos == std::string::npos) {
        try {
            return Complex(std::stod(text), 0.0);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (ipos + 1 != text.size()) return std::nullopt;
    const std::string body = text.substr(0, ipos);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    try {
        if (split == std::string::npos) {
            if (body.empty() || body == "+") return Complex(0.0, 1.0);
            if (body == "-") return Complex(0.0, -1.0);
            return Complex(0.0, std::stod(body));
        }
        const std::string imtxt = body.substr(split);
        const double re = std::stod(body.substr(0, split));
        const double im = (imtxt == "+") ? 1.0 : (imtxt == "-") ? -1.0 : std::stod(imtxt);
        return Complex(re, im);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<CVec> parse_vector(const std::string& text, int n) {
    CVec out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string piece =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const auto c = parse_complex(piece);
        if (!c) return std::nullopt;
        out.push_back(*c);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (n > 0 && static_cast<int>(out.size()) != n) return std::nullopt;
    return out;
}

std::optional<ThetaCharacteristic> parse_characteristic(const std::string& text, int n) {
    if (text.rfind("odd:", 0) == 0 || text.rfind("even:", 0) == 0) {
        const bool odd = text.front() == 'o';
        const std::string idx = text.substr(text.find(':') + 1);
        std::size_t k = 0;
        try {
            k = static_cast<std::size_t>(std::stoul(idx));
        } catch (const std::exception&) {
            return std::nullopt;
        }
        const auto list =
            odd ? ThetaCharacteristic::odd_list(n) : ThetaCharacteristic::even_list(n);
        if (k >= list.size()) return std::nullopt;
        return list[k];
    }
    const auto semi = text.find(';');
    if (semi == std::string::npos) return std::nullopt;
    const auto a = parse_vector(text.substr(0, semi), n);
    const auto b = parse_vector(text.substr(semi + 1), n);
    if (!a || !b) return std::nullopt;
    std::vector<int> a2, b2;
    for (const auto& x : *a) {
        if (x.imag() != 0.0 || (x.real() != 0.0 && x.real() != 0.5)) return std::nullopt;
        a2.push_back(x.real() == 0.5 ? 1 : 0);
    }
    for (const auto& x : *b) {
        if (x.imag() != 0.0 || (x.real() != 0.0 && x.real() != 0.5)) return std::nullopt;
        b2.push_back(x.real() == 0.5 ? 1 : 0);
    }
    return ThetaCharacteristic(std::move(a2), std::move(b2));
}

struct TauSource {
    std::string text;
    std::string fixtures_path;
    std::uint64_t seed = 1;
};

// Resolution order: user fixtures file, built-in fixtures, seeded random
// family, inline literal.
std::optional<SiegelMatrix> resolve_tau(const TauSource& src, int n) {
    if (src.text.empty()) return std::nullopt;
    if (!src.fixtures_path.empty()) {
        const auto table = load_fixtures_file(src.fixtures_path);
        const auto it = table.find(src.text);
        if (it != table.end()) return it->second;
    }
    if (const auto f = builtin_fixture(src.text, n)) return f;
    if (src.text == "random-near-iI") {
        Rng rng(src.seed);
        return random_tau_near_i(n > 0 ? n : 2, rng);
    }
    return parse_tau_literal(src.text);
}

ordered_json complex_json(const Complex& z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json vector_json(const CVec& v) {
    auto a = ordered_json::array();
    for (const auto& x : v) a.push_back(complex_json(x));
    return a;
}

ordered_json matrix_json(const ComplexMatrix& m) {
    auto rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

int emit_error(int code, const std::string& what, bool quiet) {
    if (!quiet) {
        ordered_json j;
        j["error"] = what;
        std::cerr << j.dump() << "\n";
    }
    return code;
}

double default_epsilon() {
    if (const char* env = std::getenv("THETA_ETA_EPS")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
        }
    }
    return 1e-12;
}

bool epsilon_ok(double eps) { return eps >= 1e-13 && eps <= 1e-3; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"theta function and divisor identity toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    bool quiet = false;
    bool json_out = true;
    app.add_flag("--json,!--no-json", json_out, "emit JSON (default)");
    app.add_flag("--quiet", quiet, "suppress output, use exit codes only");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate theta[a;b](z, tau)");
    int eval_n = 1;
    std::string eval_tau, eval_z, eval_char, eval_fixtures;
    double eval_eps = default_epsilon();
    bool eval_jet = false;
    std::uint64_t eval_seed = 1;
    eval->add_option("--n", eval_n, "dimension");
    eval->add_option("--tau", eval_tau, "tau fixture name or literal")->required();
    eval->add_option("--z", eval_z, "comma-separated complex entries")->required();
    eval->add_option("--char", eval_char, "characteristic: odd:k, even:k, or a;b");
    eval->add_option("--eps", eval_eps, "target accuracy");
    eval->add_option("--seed", eval_seed, "seed for random fixtures");
    eval->add_option("--fixtures", eval_fixtures, "fixtures file");
    eval->add_flag("--jet", eval_jet, "include gradient and hessian");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string verify_suite, verify_tau, verify_fixtures;
    suites::Options vo;
    vo.eps = default_epsilon();
    std::uint64_t verify_samples = 0, verify_taus = 0;
    verify->add_option("suite", verify_suite, "suite name")->required();
    verify->add_option("--n", vo.n, "dimension");
    verify->add_option("--samples", verify_samples, "samples per check");
    verify->add_option("--seed", vo.seed, "random seed");
    verify->add_option("--eps", vo.eps, "target accuracy");
    verify->add_option("--tau", verify_tau, "fix tau to a fixture or literal");
    verify->add_option("--taus", verify_taus, "number of tau draws (genus2)");
    verify->add_option("--fixtures", verify_fixtures, "fixtures file");

    // weierstrass
    auto* wcmd = app.add_subcommand("weierstrass", "the six odd half-periods of a surface");
    std::string w_tau, w_fixtures;
    double w_eps = default_epsilon();
    std::uint64_t w_seed = 1;
    wcmd->add_option("--tau", w_tau, "tau fixture name or literal")->required();
    wcmd->add_option("--eps", w_eps, "target accuracy");
    wcmd->add_option("--seed", w_seed, "seed for random fixtures");
    wcmd->add_option("--fixtures", w_fixtures, "fixtures file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval->parsed()) {
            if (!epsilon_ok(eval_eps))
                return emit_error(kExitUsage, "epsilon outside [1e-13, 1e-3]", quiet);
            const auto tau = resolve_tau({eval_tau, eval_fixtures, eval_seed}, eval_n);
            if (!tau) return emit_error(kExitUsage, "unparseable tau: " + eval_tau, quiet);
            if (tau->n() != eval_n && eval_n != 1)
                return emit_error(kExitUsage, "tau dimension disagrees with --n", quiet);
            const int n = tau->n();
            const auto z = parse_vector(eval_z, n);
            if (!z) return emit_error(kExitUsage, "unparseable z (need " + std::to_string(n) +
                                                      " complex entries)", quiet);
            ThetaCharacteristic chr(n);
            if (!eval_char.empty()) {
                const auto parsed = parse_characteristic(eval_char, n);
                if (!parsed) return emit_error(kExitUsage, "unparseable characteristic", quiet);
                chr = *parsed;
            }
            const ThetaEval e = theta_eval_scaled(*z, *tau, chr, eval_eps);
            const Complex value = e.v.value();
            if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
                return emit_error(kExitNumeric, "value overflowed double range", quiet);
            ordered_json j;
            j["value"] = complex_json(value);
            j["error_bound"] = e.mantissa_error * std::exp(std::min(e.v.log_scale, 700.0));
            j["terms_summed"] = e.terms;
            j["log_scale"] = e.v.log_scale;
            if (eval_jet) {
                if (!chr.is_zero())
                    return emit_error(kExitUsage, "--jet supports the zero characteristic", quiet);
                const ThetaJet jet = theta_jet(*z, *tau, eval_eps);
                j["gradient"] = vector_json(jet.gradient_raw());
                j["hessian"] = matrix_json(jet.hessian_raw());
            }
            if (!quiet && json_out) std::cout << j.dump() << "\n";
            return kExitOk;
        }

        if (verify->parsed()) {
            if (!epsilon_ok(vo.eps))
                return emit_error(kExitUsage, "epsilon outside [1e-13, 1e-3]", quiet);
            if (vo.n < 1 || vo.n > 6)
                return emit_error(kExitUsage, "n outside 1..6", quiet);
            const auto& names = suites::suite_names();
            if (std::find(names.begin(), names.end(), verify_suite) == names.end())
                return emit_error(kExitUsage, "unknown suite: " + verify_suite, quiet);
            vo.samples = verify_samples;
            vo.taus = verify_taus;
            if (!verify_tau.empty()) {
                const auto tau = resolve_tau({verify_tau, verify_fixtures, vo.seed}, vo.n);
                if (!tau) return emit_error(kExitUsage, "unparseable tau: " + verify_tau, quiet);
                vo.tau = tau;
                vo.n = tau->n();
            }
            const suites::Report rep = suites::run(verify_suite, vo);
            if (!quiet && json_out) std::cout << rep.json.dump() << "\n";
            return rep.pass ? kExitOk : kExitVerifyFailed;
        }

        if (wcmd->parsed()) {
            if (!epsilon_ok(w_eps))
                return emit_error(kExitUsage, "epsilon outside [1e-13, 1e-3]", quiet);
            const auto tau = resolve_tau({w_tau, w_fixtures, w_seed}, 2);
            if (!tau) return emit_error(kExitUsage, "unparseable tau: " + w_tau, quiet);
            if (tau->n() != 2)
                return emit_error(kExitUsage, "weierstrass needs a 2x2 tau", quiet);
            std::vector<CVec> pts;
            try {
                pts = weierstrass_points(*tau, w_eps);
            } catch (const std::domain_error& e) {
                return emit_error(kExitPrecondition, e.what(), quiet);
            }
            ordered_json j;
            j["tau"] = matrix_json(tau->matrix());
            auto arr = ordered_json::array();
            for (const auto& p : pts) {
                ordered_json entry;
                entry["z"] = vector_json(p);
                entry["theta_abs"] = std::abs(theta_eval(p, *tau, w_eps));
                const EtaValue e = eta_point(p, *tau, w_eps);
                entry["eta_abs_scaled"] =
                    std::abs(e.v.mantissa) / (1.0 + e.mantissa_scale);
                arr.push_back(std::move(entry));
            }
            j["points"] = std::move(arr);
            if (!quiet && json_out) std::cout << j.dump() << "\n";
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        return emit_error(kExitUsage, e.what(), quiet);
    } catch (const std::domain_error& e) {
        return emit_error(kExitPrecondition, e.what(), quiet);
    } catch (const std::exception& e) {
        return emit_error(kExitNumeric, e.what(), quiet);
    }
    return kExitUsage;
}
