#pragma once

#include "morphism.hpp"

namespace gog {

struct Pair {
    GraphPtr A;
    Morphism muB, muC;
};

// one Z vertex, one edge with alpha = m, omega = n
GraphPtr bs_graph(Elem m, Elem n);
// trivial-group immersions realizing <a^j t a^-j : 0 <= j <= m> and <at, ta>
Pair bs_pair(Elem m, Elem n);
// Z vertex with loops e1, e3 (trivial) and e2 (Z, identity maps); twists a^-1 on f1 and g3
Pair free_z2_pair();

// Z/4 *_{Z/2} Z/6
GraphPtr amalgam();
// index-2 covering: v over the Z/4 side with B_v = Z/2, two copies of the Z/6 side
Morphism amalgam_double_cover(GraphPtr A);

// one trivial vertex with k trivial loops named a, b, c, ...
GraphPtr bouquet(int k);
// cyclic degree-d covering of bouquet(1), pointed at c0
Morphism circle_cover(GraphPtr circle, int degree);
// two loops over one: not an immersion
Morphism folded_loops(GraphPtr circle);

// positive edges of B are the even indices; inverses inherit the edge mono
Morphism assemble(GraphPtr B, GraphPtr A, std::vector<int> vmap, std::vector<Mono> vmono, std::vector<int> emap,
                  std::vector<Mono> emono, std::vector<std::pair<Elem, Elem>> twists);

}  // namespace gog
