#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"

namespace gog {

class Graph {
public:
    int add_vertex(const std::string& name, GroupPtr group);
    // adds e: o -> t and its inverse; returns e
    int add_edge(const std::string& name, const std::string& inv_name, int o, int t, GroupPtr group, Mono alpha,
                 Mono omega);

    int nv() const { return static_cast<int>(vgroup_.size()); }
    int ne() const { return static_cast<int>(egroup_.size()); }

    const GroupPtr& vgroup(int v) const { return vgroup_.at(v); }
    const GroupPtr& egroup(int e) const { return egroup_.at(e); }
    int inv(int e) const { return inv_.at(e); }
    int origin(int e) const { return origin_.at(e); }
    int target(int e) const { return origin_.at(inv_.at(e)); }
    const Mono& alpha(int e) const { return alpha_.at(e); }
    const Mono& omega(int e) const { return alpha_.at(inv_.at(e)); }
    const std::string& vname(int v) const { return vname_.at(v); }
    const std::string& ename(int e) const { return ename_.at(e); }

    std::optional<int> vertex(const std::string& name) const;
    std::optional<int> edge(const std::string& name) const;
    int vertex_or_throw(const std::string& name) const;

    std::vector<int> star(int v) const;
    const std::vector<std::vector<int>>& stars() const;

    std::optional<int> basepoint;

    void validate() const;

private:
    std::vector<std::string> vname_, ename_;
    std::vector<GroupPtr> vgroup_, egroup_;
    std::vector<int> inv_, origin_;
    std::vector<Mono> alpha_;
    std::unordered_map<std::string, int> vindex_, eindex_;
    mutable std::vector<std::vector<int>> stars_;
    mutable bool stars_valid_ = false;
};

// (a_0, e_1, a_1, ..., e_k, a_k)
struct Path {
    int start = 0;
    std::vector<Elem> elems{0};
    std::vector<int> edges;

    int length() const { return static_cast<int>(edges.size()); }
    bool operator==(const Path&) const = default;
};

Path trivial_path(const Graph& g, int u);
Path element_path(const Graph& g, int u, Elem a);
Path edge_path(const Graph& g, int e);
int path_end(const Graph& g, const Path& p);
bool is_circuit(const Graph& g, const Path& p);
void check_path(const Graph& g, const Path& p);
std::string format_path(const Graph& g, const Path& p);

Path concat(const Graph& g, const Path& p, const Path& q);
Path invert(const Graph& g, const Path& p);
Path left_mul(const Graph& g, Elem a, const Path& p);
Path right_mul(const Graph& g, const Path& p, Elem a);

// positions i (1 <= i < k) where (e_i, a_i, e_{i+1}) is an elementary reduction
std::vector<int> redexes(const Graph& g, const Path& p);
Path rewrite_at(const Graph& g, const Path& p, int i);
Path reduce(const Graph& g, const Path& p);
bool is_reduced(const Graph& g, const Path& p);

bool sim_equal(const Graph& g, const Path& p, const Path& q);
bool eq_equal(const Graph& g, const Path& p, const Path& q);

struct CyclicReduction {
    Path core;       // cyclically reduced
    Path conjugator; // p =_A r^-1 core r
};
CyclicReduction cyclic_reduce(const Graph& g, const Path& p);
bool is_cyclically_reduced(const Graph& g, const Path& p);
bool is_locally_elliptic(const Graph& g, const Path& p);

struct Conjugacy {
    enum class Status { found, absent, unknown };
    Status status = Status::absent;
    Path conjugator;
};
// q =_A r^-1 p r; depth bounds the search when both circuits have length 0
Conjugacy collins_conjugate(const Graph& g, const Path& p, const Path& q, int depth);

struct Subgraph {
    Graph graph;
    std::vector<int> vmap;  // new vertex -> old vertex
    std::vector<int> emap;  // new edge -> old edge
};
Subgraph induced(const Graph& g, const std::vector<char>& keep_v, const std::vector<char>& keep_e);
Subgraph core(const Graph& g);
Subgraph pointed_core(const Graph& g, int u);

std::vector<int> component_ids(const Graph& g, int* count = nullptr);
// first Betti number of the underlying graph
long betti(const Graph& g);

// spanning forest: parent edge into each vertex (-1 for roots) and BFS order
struct SpanningTree {
    std::vector<int> parent_edge;
    std::vector<int> order;
    std::vector<int> depth;
};
SpanningTree spanning_tree(const Graph& g, int root);
// path along the tree from the root to v, trivial elements
Path tree_path(const Graph& g, const SpanningTree& t, int v);
// vertex group generators and one loop per non-tree edge, as circuits at root
std::vector<Path> pi1_generators(const Graph& g, int root, bool* all_reached = nullptr);

}  // namespace gog
