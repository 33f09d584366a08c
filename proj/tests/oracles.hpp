#pragma once

#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "covers.hpp"
#include "fixtures.hpp"

namespace oracle {

using namespace gog;
using Rng = std::mt19937_64;

Elem random_element(const Group& g, Rng& rng, Elem zwin = 6);
// random walk with random elements; may backtrack
Path random_path(const Graph& g, int start, int len, Rng& rng, Elem zwin = 6);
// built step by step so that no elementary reduction applies
std::optional<Path> random_reduced_path(const Graph& g, int start, int len, Rng& rng, Elem zwin = 6);
// random path followed by a return along a second random walk; retries until it closes
Path random_circuit(const Graph& g, int u, int len, Rng& rng, Elem zwin = 6);
// reduction with a random choice of redex at every step
Path random_rewrite(const Graph& g, Path p, Rng& rng);
// inserts a cancelling pair (e, omega(x), e^-1) and applies one ~ move
Path random_inflate(const Graph& g, const Path& p, Rng& rng);

// edge-labelled graph over A; edges stored in both directions with A-edge labels
struct LGraph {
    int n = 0;
    int base = 0;
    std::vector<std::tuple<int, int, int>> edges;  // (origin, label, target)
    long betti() const;
};
LGraph labelled(const Morphism& m);
LGraph labelled(const Graph& D, const std::vector<int>& label, int base);
// fiber product of the labelled graphs, all components
LGraph fiber_product(const LGraph& b, const LGraph& c, const Graph& A, const Morphism& mb, const Morphism& mc);
// component of the base with hanging trees removed
LGraph pointed_core(const LGraph& g);
// basepoint-preserving label-preserving isomorphism, found by walking from the base
bool pointed_isomorphic(const LGraph& a, const LGraph& b);
std::vector<long> component_bettis(const LGraph& g);

// trivial-group immersion into a bouquet: each label acts as a partial injection
Morphism random_immersion(GraphPtr bouquet, int max_vertices, int max_edges, Rng& rng);

// conjugator r with q =_A r^-1 p r among paths of length <= max_len
std::optional<Path> brute_conjugator(const Graph& g, const Path& p, const Path& q, int max_len);

// orbits {h a k} in a finite group, computed by closure
std::vector<std::vector<Elem>> brute_double_cosets(const Group& G, const Mono& H, const Mono& K);

// S3 as a table, composition right to left
GroupPtr symmetric3();
// S3 *_{Z/2} S3 along a transposition subgroup
GraphPtr s3_amalgam();
// Z/2 * Z/3
GraphPtr free_product_23();

}  // namespace oracle
