#include "thetadiv/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace thetadiv {

namespace {

SiegelMatrix make_1x1(double re, double im) {
    ComplexMatrix m(1, 1);
    m(0, 0) = Complex(re, im);
    return SiegelMatrix(m);
}

SiegelMatrix make_diag_i(int n) {
    ComplexMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m(i, i) = Complex(0.0, 1.0);
    return SiegelMatrix(m);
}

SiegelMatrix make_surface_01() {
    ComplexMatrix m(2, 2);
    m(0, 0) = Complex(0.0, 1.0);
    m(1, 1) = Complex(0.0, 1.0);
    m(0, 1) = m(1, 0) = Complex(0.1, 0.0);
    return SiegelMatrix(m);
}

SiegelMatrix make_indecomposable_2x2() {
    ComplexMatrix m(2, 2);
    m(0, 0) = Complex(0.05, 1.0);
    m(1, 1) = Complex(-0.1, 1.2);
    m(0, 1) = m(1, 0) = Complex(0.15, 0.1);
    return SiegelMatrix(m);
}

SiegelMatrix from_json_tau(const nlohmann::json& rows) {
    if (!rows.is_array() || rows.empty())
        throw std::runtime_error("fixture tau: expected a non-empty array of rows");
    const std::size_t n = rows.size();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw std::runtime_error("fixture tau: matrix is not square");
        for (std::size_t j = 0; j < n; ++j) {
            const auto& e = rows[i][j];
            if (!e.is_array() || e.size() != 2)
                throw std::runtime_error("fixture tau: entries must be [re, im] pairs");
            m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return SiegelMatrix(m);
}

}  // namespace

std::optional<SiegelMatrix> builtin_fixture(const std::string& name, int n) {
    if (name == "i" && (n == 1 || n == 0)) return make_1x1(0.0, 1.0);
    if (name == "2i" && (n == 1 || n == 0)) return make_1x1(0.0, 2.0);
    if (name == "iI2" && (n == 2 || n == 0)) return make_diag_i(2);
    if (name == "iI3" && (n == 3 || n == 0)) return make_diag_i(3);
    if (name == "iI4" && (n == 4 || n == 0)) return make_diag_i(4);
    if (name == "iI2+0.1S" && (n == 2 || n == 0)) return make_surface_01();
    if (name == "block") {
        if (n == 2 || n == 0) return block_diag(make_1x1(0.0, 1.1), make_1x1(0.2, 0.8));
        if (n == 3) return block_diag(make_1x1(0.2, 0.9), make_indecomposable_2x2());
    }
    if (name == "block-2-1" && (n == 3 || n == 0))
        return block_diag(make_indecomposable_2x2(), make_1x1(0.2, 0.9));
    return std::nullopt;
}

std::map<std::string, SiegelMatrix> load_fixtures_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("fixtures: cannot open " + path);
    nlohmann::json doc;
    in >> doc;
    const nlohmann::json& table = doc.contains("fixtures") ? doc.at("fixtures") : doc;
    std::map<std::string, SiegelMatrix> out;
    for (auto it = table.begin(); it != table.end(); ++it) {
        const auto& body = it.value();
        SiegelMatrix tau = from_json_tau(body.at("tau"));
        if (body.contains("n") && body.at("n").get<int>() != tau.n())
            throw std::runtime_error("fixtures: declared n disagrees with tau for " + it.key());
        out.insert({it.key(), std::move(tau)});
    }
    return out;
}

std::optional<SiegelMatrix> parse_tau_literal(const std::string& text) {
    if (text.empty()) return std::nullopt;
    if (text.front() == '[') {
        nlohmann::json rows = nlohmann::json::parse(text, nullptr, false);
        if (rows.is_discarded()) return std::nullopt;
        return from_json_tau(rows);
    }
    // 1x1 shorthand: "<re>?(+|-)<im>i" or "<im>i" or "i".
    const auto ipos = text.find('i');
    if (ipos == std::string::npos || ipos + 1 != text.size()) return std::nullopt;
    std::string body = text.substr(0, ipos);
    double re = 0.0, im = 1.0;
    // split at the last +/- that is not an exponent sign or leading sign
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    try {
        if (split == std::string::npos) {
            if (!body.empty() && body != "+") im = (body == "-") ? -1.0 : std::stod(body);
        } else {
            re = std::stod(body.substr(0, split));
            const std::string imtxt = body.substr(split);
            im = (imtxt == "+") ? 1.0 : (imtxt == "-") ? -1.0 : std::stod(imtxt);
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    ComplexMatrix m(1, 1);
    m(0, 0) = Complex(re, im);
    return SiegelMatrix(m);
}

}  // namespace thetadiv
