#include "thetadiv/characteristic.hpp"

#include <stdexcept>

namespace thetadiv {

ThetaCharacteristic::ThetaCharacteristic(int n)
    : n_(n), a2_(static_cast<std::size_t>(n), 0), b2_(static_cast<std::size_t>(n), 0) {
    if (n < 1) throw std::invalid_argument("ThetaCharacteristic: n must be >= 1");
}

ThetaCharacteristic::ThetaCharacteristic(std::vector<int> twice_a, std::vector<int> twice_b)
    : n_(static_cast<int>(twice_a.size())), a2_(std::move(twice_a)), b2_(std::move(twice_b)) {
    if (n_ < 1 || a2_.size() != b2_.size())
        throw std::invalid_argument("ThetaCharacteristic: size mismatch");
    for (int v : a2_)
        if (v != 0 && v != 1) throw std::invalid_argument("ThetaCharacteristic: entries must be 0 or 1/2");
    for (int v : b2_)
        if (v != 0 && v != 1) throw std::invalid_argument("ThetaCharacteristic: entries must be 0 or 1/2");
}

int ThetaCharacteristic::four_a_dot_b() const {
    int c = 0;
    for (int i = 0; i < n_; ++i) c += a2_[i] * b2_[i];
    return c;
}

bool ThetaCharacteristic::is_zero() const {
    for (int i = 0; i < n_; ++i)
        if (a2_[i] != 0 || b2_[i] != 0) return false;
    return true;
}

std::vector<ThetaCharacteristic> ThetaCharacteristic::all(int n) {
    std::vector<ThetaCharacteristic> out;
    const int total = 1 << (2 * n);
    out.reserve(static_cast<std::size_t>(total));
    for (int code = 0; code < total; ++code) {
        std::vector<int> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            a[i] = (code >> (n + i)) & 1;
            b[i] = (code >> i) & 1;
        }
        out.emplace_back(std::move(a), std::move(b));
    }
    return out;
}

std::vector<ThetaCharacteristic> ThetaCharacteristic::even_list(int n) {
    std::vector<ThetaCharacteristic> out;
    for (auto& c : all(n))
        if (c.is_even()) out.push_back(c);
    return out;
}

std::vector<ThetaCharacteristic> ThetaCharacteristic::odd_list(int n) {
    std::vector<ThetaCharacteristic> out;
    for (auto& c : all(n))
        if (c.is_odd()) out.push_back(c);
    return out;
}

}  // namespace thetadiv
