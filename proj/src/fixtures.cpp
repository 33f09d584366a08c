#include "fixtures.hpp"

#include <cctype>

namespace gog {

Morphism assemble(GraphPtr B, GraphPtr A, std::vector<int> vmap, std::vector<Mono> vmono, std::vector<int> emap,
                  std::vector<Mono> emono, std::vector<std::pair<Elem, Elem>> twists) {
    Morphism m;
    m.source = B;
    m.target = A;
    m.vmap = std::move(vmap);
    m.vmono = std::move(vmono);
    for (std::size_t i = 0; i < emap.size(); ++i) {
        m.emap.push_back(emap[i]);
        m.emap.push_back(A->inv(emap[i]));
        m.emono.push_back(emono[i]);
        m.emono.push_back(emono[i]);
        m.twist.push_back(twists[i].first);
        m.twist.push_back(twists[i].second);
    }
    m.validate();
    return m;
}

namespace {

std::shared_ptr<Graph> one_vertex(const std::string& name, GroupPtr g) {
    auto G = std::make_shared<Graph>();
    G->add_vertex(name, g);
    G->basepoint = 0;
    return G;
}

std::shared_ptr<Graph> trivial_loops(const std::string& vname, const std::vector<std::string>& names) {
    auto triv = Group::trivial();
    auto G = one_vertex(vname, triv);
    for (auto& n : names) {
        std::string inv = n;
        inv[0] = static_cast<char>(std::toupper(inv[0]));
        G->add_edge(n, inv, 0, 0, triv, Mono::trivial(triv, triv), Mono::trivial(triv, triv));
    }
    return G;
}

}  // namespace

GraphPtr bs_graph(Elem m, Elem n) {
    auto Z = Group::integers();
    auto A = one_vertex("u", Z);
    A->add_edge("e", "E", 0, 0, Z, Mono::multiplier(Z, Z, m), Mono::multiplier(Z, Z, n));
    return A;
}

Pair bs_pair(Elem m, Elem n) {
    GraphPtr A = bs_graph(m, n);
    auto Z = A->vgroup(0);
    auto triv = Group::trivial();
    std::vector<std::string> fs;
    for (Elem j = 0; j <= m; ++j) fs.push_back("f" + std::to_string(j));
    GraphPtr B = trivial_loops("v", fs);
    std::vector<int> emap;
    std::vector<Mono> emono;
    std::vector<std::pair<Elem, Elem>> tw;
    for (Elem j = 0; j <= m; ++j) {
        emap.push_back(0);
        emono.push_back(Mono::trivial(triv, Z));
        tw.push_back({j, j});
    }
    Morphism muB = assemble(B, A, {0}, {Mono::trivial(triv, Z)}, emap, emono, tw);
    auto Cg = std::make_shared<Graph>();
    Cg->add_vertex("w", triv);
    Cg->add_edge("g+", "G+", 0, 0, triv, Mono::trivial(triv, triv), Mono::trivial(triv, triv));
    Cg->add_edge("g-", "G-", 0, 0, triv, Mono::trivial(triv, triv), Mono::trivial(triv, triv));
    Cg->basepoint = 0;
    Morphism muC = assemble(Cg, A, {0}, {Mono::trivial(triv, Z)}, {0, 0},
                            {Mono::trivial(triv, Z), Mono::trivial(triv, Z)}, {{0, -1}, {1, 0}});
    return {A, muB, muC};
}

Pair free_z2_pair() {
    auto Z = Group::integers();
    auto triv = Group::trivial();
    auto A = one_vertex("u", Z);
    A->add_edge("e1", "E1", 0, 0, triv, Mono::trivial(triv, Z), Mono::trivial(triv, Z));
    A->add_edge("e2", "E2", 0, 0, Z, Mono::identity(Z), Mono::identity(Z));
    A->add_edge("e3", "E3", 0, 0, triv, Mono::trivial(triv, Z), Mono::trivial(triv, Z));
    GraphPtr Ap = A;
    std::vector<int> emap{0, 2, 4};
    std::vector<Mono> emono{Mono::trivial(triv, triv), Mono::trivial(triv, Z), Mono::trivial(triv, triv)};
    Morphism muB = assemble(trivial_loops("v", {"f1", "f2", "f3"}), Ap, {0}, {Mono::trivial(triv, Z)}, emap, emono,
                            {{-1, -1}, {0, 0}, {0, 0}});
    Morphism muC = assemble(trivial_loops("w", {"g1", "g2", "g3"}), Ap, {0}, {Mono::trivial(triv, Z)}, emap, emono,
                            {{0, 0}, {0, 0}, {-1, -1}});
    return {Ap, muB, muC};
}

GraphPtr amalgam() {
    auto C4 = Group::cyclic(4), C6 = Group::cyclic(6), C2 = Group::cyclic(2);
    auto A = std::make_shared<Graph>();
    A->add_vertex("u1", C4);
    A->add_vertex("u2", C6);
    A->add_edge("e", "E", 0, 1, C2, Mono::multiplier(C2, C4, 2), Mono::multiplier(C2, C6, 3));
    A->basepoint = 0;
    return A;
}

Morphism amalgam_double_cover(GraphPtr A) {
    auto C4 = A->vgroup(0), C6 = A->vgroup(1), C2 = A->egroup(0);
    auto B = std::make_shared<Graph>();
    B->add_vertex("v", C2);
    B->add_vertex("w1", C6);
    B->add_vertex("w2", C6);
    B->add_edge("f1", "F1", 0, 1, C2, Mono::identity(C2), Mono::multiplier(C2, C6, 3));
    B->add_edge("f2", "F2", 0, 2, C2, Mono::identity(C2), Mono::multiplier(C2, C6, 3));
    B->basepoint = 0;
    return assemble(B, A, {0, 1, 1}, {Mono::multiplier(C2, C4, 2), Mono::identity(C6), Mono::identity(C6)}, {0, 0},
                    {Mono::identity(C2), Mono::identity(C2)}, {{0, 0}, {1, 0}});
}

GraphPtr bouquet(int k) {
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    return trivial_loops("o", names);
}

Morphism circle_cover(GraphPtr circle, int degree) {
    auto triv = Group::trivial();
    auto B = std::make_shared<Graph>();
    for (int i = 0; i < degree; ++i) B->add_vertex("c" + std::to_string(i), triv);
    std::vector<int> emap;
    std::vector<Mono> emono;
    std::vector<std::pair<Elem, Elem>> tw;
    for (int i = 0; i < degree; ++i) {
        std::string s = std::to_string(i);
        B->add_edge("a" + s, "A" + s, i, (i + 1) % degree, triv, Mono::trivial(triv, triv), Mono::trivial(triv, triv));
        emap.push_back(0);
        emono.push_back(Mono::trivial(triv, triv));
        tw.push_back({0, 0});
    }
    B->basepoint = 0;
    return assemble(B, circle, std::vector<int>(degree, 0), std::vector<Mono>(degree, Mono::trivial(triv, triv)), emap,
                    emono, tw);
}

Morphism folded_loops(GraphPtr circle) {
    auto triv = Group::trivial();
    return assemble(trivial_loops("v", {"x", "y"}), circle, {0}, {Mono::trivial(triv, triv)}, {0, 0},
                    {Mono::trivial(triv, triv), Mono::trivial(triv, triv)}, {{0, 0}, {0, 0}});
}

}  // namespace gog
