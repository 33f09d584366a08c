#include "affine.hpp"

#include <cstdlib>

namespace gog {

Rat::Rat(Elem num, Elem den) : n(num), d(den) {
    if (d == 0) throw Error(Errc::invariant, "zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    Elem g = gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
}

Rat Rat::operator+(const Rat& o) const {
    Elem l = lcm(d, o.d);
    return Rat(n * (l / d) + o.n * (l / o.d), l);
}

Rat Rat::operator-(const Rat& o) const { return *this + Rat(-o.n, o.d); }

bool AffineSystem::holds(Elem r) const {
    for (auto& e : integral_)
        if (!e.at(r).integral()) return false;
    for (auto& e : zero_)
        if (!e.at(r).zero()) return false;
    return true;
}

AffineSystem::Solution AffineSystem::solve() const {
    Solution s;
    for (auto& e : zero_) {
        if (e.a.zero()) {
            if (!e.b.zero()) {
                s.none = true;
                return s;
            }
            continue;
        }
        // a*r + b = 0
        Rat r = Rat(-e.b.n * e.a.d, e.b.d * e.a.n);
        if (!r.integral() || !holds(r.n)) {
            s.none = true;
            return s;
        }
        s.unique = r.n;
        return s;
    }
    Elem period = 1;
    for (auto& e : integral_) period = lcm(period, e.a.d);
    for (auto& e : zero_) period = lcm(period, e.a.d);
    s.period = period;
    for (Elem t = 0; t < period; ++t)
        if (holds(t)) s.residues.push_back(t);
    s.none = s.residues.empty();
    return s;
}

std::vector<Elem> AffineSystem::enumerate(Elem window) const {
    std::vector<Elem> out;
    Solution s = solve();
    if (s.none) return out;
    if (s.unique) {
        if (std::llabs(*s.unique) <= window) out.push_back(*s.unique);
        return out;
    }
    auto ok = [&](Elem r) {
        for (Elem t : s.residues)
            if (floor_mod(r, s.period) == t) return true;
        return false;
    };
    if (ok(0)) out.push_back(0);
    for (Elem i = 1; i <= window; ++i) {
        if (ok(i)) out.push_back(i);
        if (ok(-i)) out.push_back(-i);
    }
    return out;
}

}  // namespace gog
