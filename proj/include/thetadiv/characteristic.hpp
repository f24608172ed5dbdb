#pragma once
// Half-integer theta characteristics [a;b], a,b in {0,1/2}^n, with the
// even/odd parity determined by 4 a.b mod 2.

#include <vector>

namespace thetadiv {

class ThetaCharacteristic {
public:
    // Zero characteristic (the plain theta function).
    explicit ThetaCharacteristic(int n);
    // Entries are given doubled, so each must be 0 or 1.
    ThetaCharacteristic(std::vector<int> twice_a, std::vector<int> twice_b);

    int n() const { return n_; }
    double a(int i) const { return 0.5 * a2_[i]; }
    double b(int i) const { return 0.5 * b2_[i]; }
    int twice_a(int i) const { return a2_[i]; }
    int twice_b(int i) const { return b2_[i]; }

    // 4 a.b = #{i : a_i = b_i = 1/2}; even characteristics have this even.
    int four_a_dot_b() const;
    bool is_even() const { return four_a_dot_b() % 2 == 0; }
    bool is_odd() const { return !is_even(); }
    bool is_zero() const;

    bool operator==(const ThetaCharacteristic& o) const {
        return a2_ == o.a2_ && b2_ == o.b2_;
    }

    // All 4^n characteristics in lexicographic (a,b) order, and the even/odd
    // sublists in the same order.
    static std::vector<ThetaCharacteristic> all(int n);
    static std::vector<ThetaCharacteristic> even_list(int n);
    static std::vector<ThetaCharacteristic> odd_list(int n);

private:
    int n_ = 0;
    std::vector<int> a2_, b2_;
};

}  // namespace thetadiv
