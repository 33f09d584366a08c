#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace gog {

using GraphPtr = std::shared_ptr<const Graph>;

// twist[f] is f_alpha in A_[o(f)]; f_omega is twist[inv f]
struct Morphism {
    GraphPtr source, target;
    std::vector<int> vmap, emap;
    std::vector<Mono> vmono, emono;
    std::vector<Elem> twist;

    int v(int x) const { return vmap.at(x); }
    int e(int f) const { return emap.at(f); }
    Elem alpha_twist(int f) const { return twist.at(f); }
    Elem omega_twist(int f) const { return twist.at(source->inv(f)); }

    static Morphism identity(GraphPtr g);
    // throws on any broken invariant, including twisted commutation
    void validate() const;
};

Path apply_path(const Morphism& m, const Path& p);
// nu o mu
Morphism compose(const Morphism& nu, const Morphism& mu);

struct StarDefect {
    int vertex = -1;    // source vertex
    int edge = -1;      // target edge at its image
    std::string what;
};

struct ImmersionReport {
    bool ok = true;
    std::vector<StarDefect> defects;
};
ImmersionReport immersion_report(const Morphism& m);
bool is_immersion(const Morphism& m);

struct CoveringReport {
    bool ok = true;
    bool window_qualified = false;
    std::vector<StarDefect> defects;
};
CoveringReport covering_report(const Morphism& m, Elem window);
bool is_covering(const Morphism& m, Elem window = 16);

// parameters for m1 ~ m2 (a_v in A_[v], a_f in A_[f])
struct Certificate {
    std::vector<Elem> vparams, eparams;
    bool pointed = false;
};

bool check_certificate(const Morphism& m1, const Morphism& m2, const Certificate& c, std::string* why = nullptr);
std::optional<Certificate> find_equivalence(const Morphism& m1, const Morphism& m2, bool pointed);
Certificate identity_certificate(const Morphism& m);
// c1: m1 ~ m2, c2: m2 ~ m3  ->  m1 ~ m3
Certificate certificate_compose(const Morphism& m1, const Morphism& m2, const Morphism& m3, const Certificate& c1,
                                const Certificate& c2);
// c: mu ~ nu  ->  mu o tau ~ nu o tau
Certificate certificate_precompose(const Morphism& mu, const Morphism& nu, const Certificate& c, const Morphism& tau);
// c: mu ~ nu  ->  tau o mu ~ tau o nu
Certificate certificate_postcompose(const Morphism& mu, const Morphism& nu, const Certificate& c, const Morphism& tau);
// c: m1 ~ m2  ->  m2 ~ m1
Certificate certificate_inverse(const Morphism& m1, const Certificate& c);

struct Centralizer {
    std::vector<Certificate> elements;
    bool window_qualified = false;
};
Centralizer centralizer(const Morphism& m, Elem window);
bool in_centralizer(const Morphism& m, const std::vector<Elem>& d);

}  // namespace gog
