#pragma once

#include <optional>
#include <vector>

#include "algebra.hpp"

namespace gog {

// exact rational, denominator kept positive
struct Rat {
    Elem n = 0, d = 1;

    Rat() = default;
    Rat(Elem num, Elem den = 1);
    bool integral() const { return d == 1; }
    bool zero() const { return n == 0; }
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(Elem k) const { return Rat(n * k, d); }
    Rat operator/(Elem k) const { return Rat(n, d * k); }
};

// a*r + b for an unknown integer r
struct Affine {
    Rat a, b;

    static Affine var() { return {Rat(1), Rat(0)}; }
    static Affine constant(Elem c) { return {Rat(0), Rat(c)}; }
    Affine operator+(const Affine& o) const { return {a + o.a, b + o.b}; }
    Affine operator-(const Affine& o) const { return {a - o.a, b - o.b}; }
    Affine operator+(Elem c) const { return {a, b + Rat(c)}; }
    Affine operator*(Elem k) const { return {a * k, b * k}; }
    Affine operator/(Elem k) const { return {a / k, b / k}; }
    Rat at(Elem r) const { return a * r + b; }
};

// integer solutions r of a set of "integral" and "zero" constraints:
// none, one value, or a union of residue classes modulo a period
class AffineSystem {
public:
    void integral(const Affine& e) { integral_.push_back(e); }
    void zero(const Affine& e) { zero_.push_back(e); }

    struct Solution {
        bool none = false;
        std::optional<Elem> unique;
        Elem period = 1;
        std::vector<Elem> residues;
    };
    Solution solve() const;
    // every solution with |r| <= window, ordered 0, 1, -1, 2, -2, ...
    std::vector<Elem> enumerate(Elem window) const;

private:
    bool holds(Elem r) const;
    std::vector<Affine> integral_, zero_;
};

}  // namespace gog
