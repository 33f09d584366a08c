#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "morphism.hpp"

namespace gog {

struct ProductOptions {
    int radius = 6;
    Elem coset_window = 5;
};

struct ProductVertex {
    int v = -1, w = -1;
    Elem rep = 0;  // x~ in A_u
};

struct ProductEdge {
    int f = -1, g = -1;
    Elem rep = 0;         // h~ in A_e
    Elem b = 0, c = 0;    // x~ = muB(b) f_alpha alpha_e(h~) g_alpha^-1 muC(c)^-1
};

struct Product {
    Morphism muB, muC;
    GraphPtr graph;
    std::vector<ProductVertex> verts;
    std::vector<ProductEdge> edges;
    Morphism rhoB, rhoC;
    ProductOptions options;
    std::vector<int> seeds;
    bool complete = true;

    std::optional<int> find_vertex(int v, int w, Elem rep) const;
    std::optional<int> find_edge(int f, int g, Elem rep) const;
    // canonical double coset representatives
    Elem vertex_class(int v, int w, Elem a) const;
    Elem edge_class(int f, int g, Elem a) const;

    std::map<std::tuple<int, int, Elem>, int> vindex, eindex;
};

Product build_product(const Morphism& muB, const Morphism& muC, const ProductOptions& opt);
// component of x0 = muB(B_v0) muC(C_w0), with x~0 = 1
Product pointed_product(const Morphism& muB, const Morphism& muC, const ProductOptions& opt);

// vertex parameters x~, edge parameters h~ for muB o rhoB ~ muC o rhoC
Certificate square_certificate(const Product& p);

struct Lift {
    Morphism sigma;
    Certificate to_B;  // rhoB o sigma ~ sigB
    Certificate to_C;  // rhoC o sigma ~ sigC
};
// a: muB o sigB ~ muC o sigC; d: element of C(muC o sigC)
Lift lift(const Product& p, const Morphism& sigB, const Morphism& sigC, const Certificate& a, const Certificate& d);
// whether the lifts for d1 and d2 are equivalent, decided through the centralizer equation at every vertex
bool lifts_equivalent(const Product& p, const Morphism& sigB, const Morphism& sigC, const Certificate& a,
                      const Certificate& d1, const Certificate& d2, Elem window);

struct ComponentInfo {
    std::vector<int> vertices;
    long betti = 0;
    bool nontrivial_groups = false;
    Path key;  // muB(p_v) x~ muC(q_w)^-1, reduced
};
std::vector<ComponentInfo> components(const Product& p);
// bounded test for key2 in B key1 C, words of length <= depth in generators of both subgroups
bool same_double_coset(const Product& p, const Path& key1, const Path& key2, int depth);

struct Generators {
    std::vector<Path> loops;     // circuits at x0 in the product
    std::vector<Path> images;    // their images under muB o rhoB
    bool complete = true;
};
Generators intersection_generators(const Product& p);

struct GrowthRow {
    int radius = 0;
    int vertices = 0, edges = 0;
    long betti = 0;
    bool complete = true;
};
std::vector<GrowthRow> rank_growth(const Morphism& muB, const Morphism& muC, const std::vector<int>& radii,
                                   Elem coset_window);
bool strictly_increasing(const std::vector<GrowthRow>& rows);

}  // namespace gog
