#pragma once

#include <optional>
#include <string>
#include <vector>

#include "product.hpp"

namespace gog {

struct PathLift {
    Path q;   // path in the cover from v0
    Elem a;   // mu(q) a ~ p
};
// throws NotACovering when a star has no edge for the next step
PathLift lift_path(const Morphism& mu, const Path& p, int v0);

struct MorphismLift {
    enum class Status { found, absent, undecided };
    Status status = Status::undecided;
    std::optional<Morphism> sigma;
    Certificate cert;   // muB o sigma ~ muC
    std::string reason;
};
MorphismLift lift_morphism(const Morphism& muB, const Morphism& muC, const ProductOptions& opt);

struct Stallings {
    GraphPtr graph;
    Morphism immersion;
};
// folded wedge of generator loops over a trivial-group graph, restricted to its pointed core
Stallings stallings_cover(GraphPtr A, const std::vector<Path>& generators);

struct Completion {
    Stallings cover;
    std::vector<int> frontier;  // hanging vertices left open at the radius
};
// hangs trees on missing star edges up to the radius
Completion complete_cover(const Stallings& s, int radius);

struct TreeBall {
    Graph tree;
    std::vector<int> over;       // vertex of A under each tree vertex
    std::vector<Path> label;     // path class from the center
    std::vector<int> edge_over;  // edge of A under each tree edge
    std::vector<int> depth;
    int radius = 0;
    bool truncated = false;
};
TreeBall bass_serre_ball(const Graph& A, int u0, int radius, Elem coset_window);
// sum over the star of the edge-group indices, 0 when some index is infinite
Elem expected_degree(const Graph& A, int u);
bool tree_ball_acyclic(const Graph& A, const TreeBall& t);

struct Acylindricity {
    enum class Verdict { yes, no, unknown };
    Verdict verdict = Verdict::yes;
    Path witness;
    Elem element = 0;
    long paths_checked = 0;
};
Acylindricity is_k_acylindrical(const Graph& A, int k, Elem element_window);

}  // namespace gog
