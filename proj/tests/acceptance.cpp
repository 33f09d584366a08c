// one line per acceptance criterion; exit status 1 when any fails
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include <json.hpp>

#include "gog/gog.h"
#include "oracles.hpp"

using namespace gog;
using json = nlohmann::json;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

// =_A-class of r^-1 p r
Path conj_by(const Graph& A, const Path& p, const Path& r) { return concat(A, concat(A, invert(A, r), p), r); }

bool square_ok(const Product& P) {
    return check_certificate(compose(P.muB, P.rhoB), compose(P.muC, P.rhoC), square_certificate(P));
}

json demo(long m, long n, int radius) {
    gog_options opt;
    gog_options_init(&opt);
    opt.radius = radius;
    gog_report* r = nullptr;
    gog_demo_bs(m, n, &opt, &r);
    if (!r) return json{{"error", gog_last_error()}};
    json j = json::parse(gog_report_json(r));
    gog_report_free(r);
    return j;
}

Outcome c1_bs_growth() {
    Outcome o;
    auto bs = bs_pair(2, 3);
    int e = 0;
    int gplus = *bs.muC.source->edge("g+");
    for (int R = 2; R <= 10; ++R) {
        Product P = pointed_product(bs.muB, bs.muC, {R, 5});
        const Graph& D = *P.graph;
        for (int k = 0; k < D.ne(); ++k) {
            const ProductEdge& pe = P.edges[k];
            if (bs.muB.e(pe.f) != e || pe.g != gplus) continue;
            Elem j = bs.muB.alpha_twist(pe.f), i = pe.rep;
            o.require(P.verts[D.origin(k)].rep == 2 * i + j, "origin formula fails at R=" + std::to_string(R));
            o.require(P.verts[D.target(k)].rep == 3 * i + j + 1, "target formula fails at R=" + std::to_string(R));
        }
    }
    auto start = std::chrono::steady_clock::now();
    json j23 = demo(2, 3, 10);
    double t23 = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(j23.value("incidence_mismatches", -1) == 0, "demo-bs 2 3 reports incidence mismatches");
    o.require(j23.value("verdict", "") == "fgip counterexample evidence", "demo-bs 2 3 betti not strictly increasing");
    auto& tab = j23["betti_table"];
    o.require(tab.size() == 9, "demo-bs 2 3 does not cover radii 2..10");
    for (std::size_t i = 1; i < tab.size(); ++i)
        o.require(tab[i]["betti"].get<long>() > tab[i - 1]["betti"].get<long>(), "betti not strictly increasing");
    o.require(t23 < 2.0, "demo-bs 2 3 slower than 2 s");

    start = std::chrono::steady_clock::now();
    json j12 = demo(1, 2, 10);
    double t12 = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(t12 < 2.0, "demo-bs 1 2 slower than 2 s");
    auto& t1 = j12["betti_table"];
    std::string seq;
    for (auto& row : t1) seq += (seq.empty() ? "" : ",") + std::to_string(row["betti"].get<long>());
    bool stable = t1.size() >= 3;
    for (std::size_t i = 0; i < t1.size(); ++i)
        if (t1[i]["radius"].get<int>() >= 4 && t1[i]["betti"] != t1[2]["betti"]) stable = false;
    o.require(stable, "demo-bs 1 2 betti does not stabilize by R=4: " + seq);
    return o;
}

Outcome c2_free_product() {
    Outcome o;
    auto fz = free_z2_pair();
    Product P = build_product(fz.muB, fz.muC, {6, 5});
    o.require(square_ok(P), "square certificate");
    auto comps = components(P);
    o.require(comps.size() == 11, "component count " + std::to_string(comps.size()));
    for (auto& c : comps) {
        Elem rep = P.verts[c.vertices.front()].rep;
        long loops = c.betti;
        o.require(loops == (std::llabs(rep) == 1 ? 2 : 1), "loop count at representative " + std::to_string(rep));
        o.require(!c.nontrivial_groups, "nontrivial group in a component");
    }
    for (int h = 0; h < P.graph->ne(); ++h)
        o.require(P.graph->egroup(h)->kind() == Group::Kind::trivial, "nontrivial edge group");

    // one-loop source mapped onto g2
    auto triv = Group::trivial();
    auto Dp = std::make_shared<Graph>();
    Dp->add_vertex("y", triv);
    Dp->add_edge("l", "L", 0, 0, triv, Mono::trivial(triv, triv), Mono::trivial(triv, triv));
    Dp->basepoint = 0;
    Morphism sigC = assemble(Dp, fz.muC.source, {0}, {Mono::trivial(triv, triv)}, {*fz.muC.source->edge("g2")},
                             {Mono::trivial(triv, triv)}, {{0, 0}});
    auto cz = centralizer(compose(fz.muC, sigC), 5);
    bool nonidentity = false;
    for (auto& c : cz.elements)
        if (std::any_of(c.vparams.begin(), c.vparams.end(), [](Elem a) { return a != 0; })) nonidentity = true;
    o.require(nonidentity, "centralizer has only the identity");
    return o;
}

Outcome c3_stallings() {
    Outcome o;
    oracle::Rng rng(1003);
    auto F2 = bouquet(2);
    for (int it = 0; it < 50; ++it) {
        Morphism b = oracle::random_immersion(F2, 6, 10, rng);
        Morphism c = oracle::random_immersion(F2, 6, 10, rng);
        Product Q = pointed_product(b, c, {24, 5});
        o.require(Q.complete, "pointed product not complete");
        o.require(square_ok(Q), "square certificate");
        auto core = pointed_core(*Q.graph, 0);
        std::vector<int> labels;
        for (int h = 0; h < core.graph.ne(); ++h) labels.push_back(b.e(Q.rhoB.e(core.emap[h])));
        auto got = oracle::labelled(core.graph, labels, *core.graph.basepoint);
        auto expect = oracle::pointed_core(oracle::fiber_product(oracle::labelled(b), oracle::labelled(c), *F2, b, c));
        o.require(oracle::pointed_isomorphic(got, expect), "pointed cores differ at sample " + std::to_string(it));
        o.require(betti(core.graph) == expect.betti(), "betti differs at sample " + std::to_string(it));
    }
    return o;
}

Outcome c4_confluence() {
    Outcome o;
    oracle::Rng rng(1004);
    for (auto& A : {bs_graph(2, 3), amalgam(), bouquet(2)})
        for (int it = 0; it < 200; ++it) {
            int u = static_cast<int>(rng() % A->nv());
            Path p = oracle::random_path(*A, u, static_cast<int>(rng() % 10), rng);
            Path r1 = oracle::random_rewrite(*A, p, rng), r2 = oracle::random_rewrite(*A, p, rng);
            o.require(is_reduced(*A, r1) && is_reduced(*A, r2), "rewrite did not reach a reduced path");
            o.require(sim_equal(*A, r1, r2), "two rewrite sequences disagree");
            Path r = reduce(*A, p);
            o.require(reduce(*A, r) == r, "reduce not idempotent");
            Path q = oracle::random_inflate(*A, oracle::random_inflate(*A, p, rng), rng);
            o.require(reduce(*A, q).length() == r.length(), "equal paths reduce to different lengths");
        }
    return o;
}

Outcome c5_functoriality() {
    Outcome o;
    oracle::Rng rng(1005);
    auto Am = amalgam();
    auto fz = free_z2_pair();
    auto bs = bs_pair(2, 3);
    for (auto& m : {amalgam_double_cover(Am), fz.muB, bs.muC}) {
        const Graph& B = *m.source;
        const Graph& A = *m.target;
        for (int it = 0; it < 200; ++it) {
            int v = static_cast<int>(rng() % B.nv());
            Path p = oracle::random_path(B, v, static_cast<int>(rng() % 5), rng);
            Path q = oracle::random_path(B, path_end(B, p), static_cast<int>(rng() % 5), rng);
            o.require(eq_equal(A, apply_path(m, concat(B, p, q)), concat(A, apply_path(m, p), apply_path(m, q))),
                      "image of a concatenation");
            Path p2 = oracle::random_inflate(B, p, rng);
            o.require(eq_equal(A, apply_path(m, p), apply_path(m, p2)), "image of =_A-equal paths");
        }
    }
    return o;
}

Outcome c6_immersion() {
    Outcome o;
    oracle::Rng rng(1006);
    auto Am = amalgam();
    auto circle = bouquet(1);
    auto fz = free_z2_pair();
    auto bs = bs_pair(2, 3);
    struct Case {
        std::string name;
        Morphism m;
    };
    std::vector<Case> cases{{"amalgam cover", amalgam_double_cover(Am)}, {"circle cover", circle_cover(circle, 3)},
                            {"folded loops", folded_loops(circle)},     {"free muB", fz.muB},
                            {"free muC", fz.muC},                        {"BS muC", bs.muC},
                            {"BS muB", bs.muB}};
    int negatives = 0;
    for (auto& c : cases) {
        const Graph& B = *c.m.source;
        bool preserved = true;
        for (int it = 0; it < 1000 && preserved; ++it) {
            int v = static_cast<int>(rng() % B.nv());
            auto p = oracle::random_reduced_path(B, v, 1 + static_cast<int>(rng() % 5), rng, 3);
            if (!p) continue;
            if (!is_reduced(*c.m.target, apply_path(c.m, *p))) preserved = false;
        }
        bool imm = is_immersion(c.m);
        if (!imm) ++negatives;
        o.require(imm == preserved, c.name + ": is_immersion " + (imm ? "true" : "false") + ", paths preserved " +
                                        (preserved ? "true" : "false"));
    }
    o.require(negatives >= 1, "no negative fixture");
    return o;
}

Outcome c7_squares() {
    Outcome o;
    oracle::Rng rng(1007);
    auto Am = amalgam();
    auto cover = amalgam_double_cover(Am);
    auto bs = bs_pair(2, 3);
    auto fz = free_z2_pair();
    auto F2 = bouquet(2);
    std::vector<Product> products{build_product(cover, cover, {6, 5}), build_product(cover, Morphism::identity(Am), {6, 5}),
                                  pointed_product(bs.muB, bs.muC, {6, 5}), build_product(fz.muB, fz.muC, {6, 5})};
    for (int it = 0; it < 20; ++it)
        products.push_back(
            build_product(oracle::random_immersion(F2, 5, 8, rng), oracle::random_immersion(F2, 5, 8, rng), {8, 5}));
    for (auto& P : products) o.require(square_ok(P), "square certificate rejected");
    return o;
}

Outcome c8_lifts() {
    Outcome o;
    auto Am = amalgam();
    Morphism cover = amalgam_double_cover(Am);
    Product P = build_product(cover, cover, {8, 5});
    o.require(P.complete, "product not complete");
    Morphism sig = Morphism::identity(cover.source);
    Morphism top = compose(cover, sig), bottom = compose(cover, sig);
    Certificate a = identity_certificate(top);
    a.pointed = false;
    auto cz = centralizer(bottom, 5);
    o.require(!cz.elements.empty(), "empty centralizer");
    std::vector<Lift> lifts;
    for (auto& d : cz.elements) {
        Lift l = lift(P, sig, sig, a, d);
        o.require(check_certificate(compose(P.rhoB, l.sigma), sig, l.to_B), "left projection certificate");
        o.require(check_certificate(compose(P.rhoC, l.sigma), sig, l.to_C), "right projection certificate");
        lifts.push_back(l);
    }
    for (std::size_t i = 0; i < lifts.size(); ++i)
        for (std::size_t j = 0; j < lifts.size(); ++j) {
            const Morphism& s1 = lifts[i].sigma;
            const Morphism& s2 = lifts[j].sigma;
            if (s1.vmap[0] == s2.vmap[0])
                o.require(s1.vmap == s2.vmap && s1.emap == s2.emap, "lifts agree at a vertex but not everywhere");
            bool related = lifts_equivalent(P, sig, sig, a, cz.elements[i], cz.elements[j], 5);
            bool equiv = find_equivalence(s1, s2, false).has_value();
            if (related) o.require(equiv, "related lifts are not equivalent");
        }
    return o;
}

Outcome c9_covering_lift() {
    Outcome o;
    oracle::Rng rng(1009);
    auto Am = amalgam();
    Morphism cover = amalgam_double_cover(Am);
    o.require(is_covering(cover), "fixture is not a covering");
    for (int it = 0; it < 100; ++it) {
        Path p = oracle::random_path(*Am, 0, static_cast<int>(rng() % 8), rng);
        PathLift pl = lift_path(cover, p, 0);
        o.require(sim_equal(*Am, reduce(*Am, right_mul(*Am, apply_path(cover, pl.q), pl.a)), reduce(*Am, p)),
                  "lifted path does not map back");
    }
    auto circle = bouquet(1);
    auto c2 = circle_cover(circle, 2), c3 = circle_cover(circle, 3), c4 = circle_cover(circle, 4);
    o.require(lift_morphism(c2, c3, {8, 5}).status == MorphismLift::Status::absent, "degree 2 vs 3 lifted");
    o.require(lift_morphism(c2, c4, {8, 5}).status == MorphismLift::Status::found, "degree 2 vs 4 not lifted");
    o.require(lift_morphism(c3, c2, {8, 5}).status == MorphismLift::Status::absent, "degree 3 vs 2 lifted");
    return o;
}

Outcome c10_collins() {
    Outcome o;
    oracle::Rng rng(1010);
    auto Am = amalgam();
    const Graph& A = *Am;
    int pairs = 0, found = 0;
    while (pairs < 100) {
        Path p = cyclic_reduce(A, oracle::random_circuit(A, static_cast<int>(rng() % 2), static_cast<int>(rng() % 3), rng)).core;
        Path q;
        if (rng() % 2) {
            Path r = oracle::random_path(A, p.start, 1 + static_cast<int>(rng() % 3), rng);
            q = cyclic_reduce(A, conj_by(A, p, r)).core;
        } else {
            q = cyclic_reduce(A, oracle::random_circuit(A, static_cast<int>(rng() % 2), static_cast<int>(rng() % 3), rng)).core;
        }
        ++pairs;
        auto c = collins_conjugate(A, p, q, 12);
        auto brute = oracle::brute_conjugator(A, p, q, 6);
        o.require(c.status != Conjugacy::Status::unknown, "search inconclusive");
        bool yes = c.status == Conjugacy::Status::found;
        o.require(yes == brute.has_value(), "disagrees with brute force on " + format_path(A, p) + " vs " + format_path(A, q));
        if (yes) {
            ++found;
            o.require(eq_equal(A, q, conj_by(A, p, c.conjugator)), "returned conjugator fails");
        }
    }
    o.require(found > 0 && found < pairs, "sample lacks conjugate or non-conjugate pairs");
    return o;
}

// phi: pi1 -> Z/2, x mod 2 on the Z/4 side, zero on the Z/6 side; the cover's subgroup is its kernel
Elem phi(const Graph& A, const Path& p) {
    Elem s = 0;
    int cur = p.start;
    for (std::size_t i = 0; i < p.elems.size(); ++i) {
        if (cur == 0) s += p.elems[i];
        if (i < p.edges.size()) cur = A.target(p.edges[i]);
    }
    return s % 2;
}

Outcome c11_double_cosets() {
    Outcome o;
    auto Am = amalgam();
    const Graph& A = *Am;
    Morphism cover = amalgam_double_cover(Am);
    auto triv = Group::trivial();
    auto C4 = A.vgroup(0), C6 = A.vgroup(1), C2 = A.egroup(0);
    struct Case {
        std::string name;
        Morphism muC;
    };
    std::vector<Case> cases;
    {
        auto G = std::make_shared<Graph>();
        G->add_vertex("z", C6);
        G->basepoint = 0;
        cases.push_back({"Z/6 vertex", assemble(G, Am, {1}, {Mono::identity(C6)}, {}, {}, {})});
    }
    {
        auto G = std::make_shared<Graph>();
        G->add_vertex("z", C4);
        G->basepoint = 0;
        cases.push_back({"Z/4 vertex", assemble(G, Am, {0}, {Mono::identity(C4)}, {}, {}, {})});
    }
    {
        auto G = std::make_shared<Graph>();
        G->add_vertex("x1", triv);
        G->add_vertex("x2", triv);
        G->add_edge("c1", "C1", 0, 1, triv, Mono::trivial(triv, triv), Mono::trivial(triv, triv));
        G->add_edge("c2", "C2", 1, 0, triv, Mono::trivial(triv, triv), Mono::trivial(triv, triv));
        G->basepoint = 0;
        cases.push_back({"cyclic", assemble(G, Am, {0, 1}, {Mono::trivial(triv, C4), Mono::trivial(triv, C6)},
                                            {0, 1}, {Mono::trivial(triv, C2), Mono::trivial(triv, C2)}, {{1, 0}, {1, 0}})});
    }
    {
        auto G = std::make_shared<Graph>();
        G->add_vertex("z", triv);
        G->basepoint = 0;
        cases.push_back({"trivial", assemble(G, Am, {0}, {Mono::trivial(triv, C4)}, {}, {}, {})});
    }
    for (auto& c : cases) {
        // brute force over Z/2 = pi1 / B: cosets g with B^g = B, so B g C is determined by phi(g) mod phi(C)
        const Graph& Cg = *c.muC.source;
        std::set<Elem> phiC{0};
        bool meets_kernel = false;
        for (int v = 0; v < Cg.nv(); ++v)
            for (Elem x : Cg.vgroup(v)->elements()) {
                Elem y = c.muC.vmono[v].apply(x);
                if (c.muC.v(v) == 0) phiC.insert(y % 2);
                if (y != 0 && (c.muC.v(v) != 0 || y % 2 == 0)) meets_kernel = true;
            }
        for (auto& g : pi1_generators(Cg, 0)) {
            Path img = apply_path(c.muC, g);
            phiC.insert(phi(A, img));
            if (img.length() > 0) meets_kernel = true;  // the square of an infinite-order generator
        }
        long brute = meets_kernel ? static_cast<long>(2 / phiC.size()) : 0;

        Product P = build_product(cover, c.muC, {8, 5});
        o.require(P.complete, c.name + ": product not complete");
        o.require(square_ok(P), c.name + ": square certificate");
        long nontrivial = 0;
        auto comps = components(P);
        for (auto& ci : comps)
            if (ci.betti > 0 || ci.nontrivial_groups) ++nontrivial;
        o.require(nontrivial == brute, c.name + ": " + std::to_string(nontrivial) + " components with nontrivial pi1, " +
                                           std::to_string(brute) + " double cosets");
        for (std::size_t i = 0; i < comps.size(); ++i)
            for (std::size_t j = i + 1; j < comps.size(); ++j)
                o.require(!same_double_coset(P, comps[i].key, comps[j].key, 2), c.name + ": two keys share a double coset");
    }
    return o;
}

Outcome c12_tree_balls() {
    Outcome o;
    auto bs = bs_graph(2, 3);
    auto Am = amalgam();
    auto tb = bass_serre_ball(*bs, 0, 4, 5);
    o.require(tb.tree.star(0).size() == 5, "BS(2,3) center degree");
    for (int r = 1; r <= 4; ++r) {
        o.require(tree_ball_acyclic(*bs, bass_serre_ball(*bs, 0, r, 5)), "BS(2,3) ball not acyclic");
        auto ta = bass_serre_ball(*Am, 0, r, 5);
        o.require(tree_ball_acyclic(*Am, ta), "amalgam ball not acyclic");
        for (int x = 0; x < ta.tree.nv(); ++x) {
            if (ta.depth[x] >= r) continue;
            std::size_t want = ta.over[x] == 0 ? 2 : 3;
            o.require(ta.tree.star(x).size() == want, "amalgam degree");
        }
        for (int h = 0; h < ta.tree.ne(); ++h)
            o.require(ta.over[ta.tree.origin(h)] != ta.over[ta.tree.target(h)], "amalgam ball not bipartite");
    }
    return o;
}

Outcome c13_acylindricity() {
    Outcome o;
    using V = Acylindricity::Verdict;
    o.require(is_k_acylindrical(*bouquet(2), 1, 5).verdict == V::yes, "bouquet");
    o.require(is_k_acylindrical(*bouquet(1), 1, 5).verdict == V::yes, "circle");
    auto bsA = bs_graph(2, 3);
    auto w = is_k_acylindrical(*bsA, 1, 5);
    o.require(w.verdict == V::no, "BS(2,3) reported acylindrical");
    if (w.verdict == V::no) {
        Path back = reduce(*bsA, concat(*bsA, right_mul(*bsA, w.witness, w.element), invert(*bsA, w.witness)));
        o.require(w.element != 0 && back.length() == 0, "witness does not verify");
    }
    for (auto& A : {amalgam(), oracle::s3_amalgam(), oracle::free_product_23()}) {
        bool seen_yes = false;
        for (int k = 1; k <= 4; ++k) {
            bool yes = is_k_acylindrical(*A, k, 5).verdict == V::yes;
            o.require(!(seen_yes && !yes), "not monotone in k");
            seen_yes = seen_yes || yes;
        }
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all{
        {"1 BS(m,n) incidence and betti growth", c1_bs_growth},
        {"2 free product example components and centralizer", c2_free_product},
        {"3 pointed product matches fiber product of labelled graphs", c3_stallings},
        {"4 reduction confluence", c4_confluence},
        {"5 morphism functoriality", c5_functoriality},
        {"6 immersion characterization", c6_immersion},
        {"7 product square certificate", c7_squares},
        {"8 lift laws on the finite amalgam", c8_lifts},
        {"9 covering lifts", c9_covering_lift},
        {"10 Collins against brute force", c10_collins},
        {"11 components and double cosets", c11_double_cosets},
        {"12 Bass-Serre tree balls", c12_tree_balls},
        {"13 acylindricity", c13_acylindricity},
    };
    int failed = 0;
    for (auto& c : all) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.note = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %-58s %7.3f s%s%s\n", o.ok ? "PASS" : "FAIL", c.name, secs, o.ok ? "" : "  ", o.note.c_str());
        if (!o.ok) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
