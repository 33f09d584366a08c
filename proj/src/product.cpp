#include "product.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace gog {

namespace {

std::string vertex_label(const Morphism& muB, const Morphism& muC, int v, int w, Elem rep) {
    const Graph& A = *muB.target;
    return "(" + muB.source->vname(v) + "," + muC.source->vname(w) + "," + A.vgroup(muB.v(v))->format(rep) + ")";
}

std::string edge_label(const Morphism& muB, const Morphism& muC, int f, int g, Elem rep) {
    const Graph& A = *muB.target;
    return "(" + muB.source->ename(f) + "," + muC.source->ename(g) + "," + A.egroup(muB.e(f))->format(rep) + ")";
}

DoubleCosets vertex_cosets(const Morphism& muB, const Morphism& muC, int v, int w) {
    return DoubleCosets(muB.target->vgroup(muB.v(v)), muB.vmono[v], muC.vmono[w]);
}

DoubleCosets edge_cosets(const Morphism& muB, const Morphism& muC, int f, int g) {
    return DoubleCosets(muB.target->egroup(muB.e(f)), muB.emono[f], muC.emono[g]);
}

// f_alpha alpha_e(a) g_alpha^-1
Elem incidence(const Morphism& muB, const Morphism& muC, int f, int g, Elem a) {
    const Graph& A = *muB.target;
    int e = muB.e(f);
    const Group& G = *A.vgroup(A.origin(e));
    return G.op(G.op(muB.alpha_twist(f), A.alpha(e).apply(a)), G.inv(muC.alpha_twist(g)));
}

// k0, step with m k = r (mod n) iff k = k0 (mod step); n = 0 means exact
std::optional<std::pair<Elem, Elem>> congruence(Elem m, Elem r, Elem n) {
    if (n == 0) {
        if (m == 0 || r % m != 0) return std::nullopt;
        return std::make_pair(r / m, Elem{0});
    }
    Elem x, y;
    Elem d = ext_gcd(floor_mod(m, n), n, x, y);
    if (floor_mod(r, d) != 0) return std::nullopt;
    Elem step = n / d;
    Elem k0 = step == 1 ? 0 : floor_mod(floor_mod(x, step) * floor_mod(r / d, step), step);
    return std::make_pair(k0, step);
}

// edge classes (f, g, rep) whose origin is the vertex (v, w, xt)
std::vector<Elem> edges_at(const Morphism& muB, const Morphism& muC, int f, int g, Elem xt, Elem window,
                           bool& truncated) {
    const Graph& A = *muB.target;
    int e = muB.e(f);
    int v = muB.source->origin(f), w = muC.source->origin(g);
    DoubleCosets vdc = vertex_cosets(muB, muC, v, w);
    DoubleCosets edc = edge_cosets(muB, muC, f, g);
    std::set<Elem> reps;
    std::vector<Elem> out;
    auto keep = [&](Elem k) {
        if (vdc.canonical(incidence(muB, muC, f, g, k)) != xt) return;
        Elem r = edc.canonical(k);
        if (reps.insert(r).second) out.push_back(r);
    };
    if (A.egroup(e)->finite()) {
        for (Elem r : edc.representatives(0)) keep(r);
        return out;
    }
    Elem m = A.alpha(e).factor();
    Elem n = gcd(muB.vmono[v].lattice(), muC.vmono[w].lattice());
    Elem ne = gcd(muB.emono[f].lattice(), muC.emono[g].lattice());
    auto sol = congruence(m, xt - muB.alpha_twist(f) + muC.alpha_twist(g), n);
    if (!sol) return out;
    auto [k0, step] = *sol;
    if (step == 0) {
        keep(k0);
    } else if (ne != 0) {
        Elem count = ne / gcd(step, ne);
        for (Elem t = 0; t < count; ++t) keep(floor_mod(k0 + step * t, ne));
    } else {
        truncated = true;
        Elem base = -window + floor_mod(k0 + window, step);
        std::vector<Elem> ks;
        for (Elem k = base; k <= window; k += step)
            if (k >= -window) ks.push_back(k);
        std::stable_sort(ks.begin(), ks.end(), [](Elem a, Elem b) {
            Elem aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
            return aa != bb ? aa < bb : a > b;
        });
        for (Elem k : ks) keep(k);
    }
    return out;
}

struct Builder {
    const Morphism& muB;
    const Morphism& muC;
    ProductOptions opt;
    Product P;
    std::shared_ptr<Graph> G = std::make_shared<Graph>();
    std::vector<TwistedPullback> vpb, epb;

    Builder(const Morphism& b, const Morphism& c, const ProductOptions& o) : muB(b), muC(c), opt(o) {
        if (muB.target != muC.target) throw Error(Errc::composability, "product of morphisms into different graphs");
        P.muB = muB;
        P.muC = muC;
        P.options = opt;
    }

    int add_vertex(int v, int w, Elem rep) {
        auto key = std::make_tuple(v, w, rep);
        if (auto it = P.vindex.find(key); it != P.vindex.end()) return it->second;
        auto pb = twisted_pullback(muB.vmono[v], muC.vmono[w], rep);
        int x = G->add_vertex(vertex_label(muB, muC, v, w, rep), pb.group);
        vpb.push_back(pb);
        P.verts.push_back({v, w, rep});
        P.vindex[key] = x;
        return x;
    }

    std::pair<Elem, Elem> witness(int f, int g, Elem rep, int x) {
        const ProductVertex& pv = P.verts[x];
        DoubleCosets vdc = vertex_cosets(muB, muC, pv.v, pv.w);
        auto bc = vdc.factor(incidence(muB, muC, f, g, rep), pv.rep);
        if (!bc) throw Error(Errc::invariant, "edge origin is not in the expected double coset");
        return {bc->first, muC.source->vgroup(pv.w)->inv(bc->second)};
    }

    void add_edge(int f, int g, Elem rep, int x, int y) {
        const Graph& B = *muB.source;
        const Graph& C = *muC.source;
        int fi = B.inv(f), gi = C.inv(g);
        auto [b, c] = witness(f, g, rep, x);
        auto [bi, ci] = witness(fi, gi, rep, y);
        auto pb = twisted_pullback(muB.emono[f], muC.emono[g], rep);
        auto edge_map = [&](int ff, int gg, Elem bb, Elem cc, int z) {
            const TwistedPullback& target = vpb[z];
            const Group& Bv = *B.vgroup(B.origin(ff));
            const Group& Cw = *C.vgroup(C.origin(gg));
            return Mono::from_function(pb.group, target.group, [&, ff, gg, bb, cc](Elem d) {
                Elem left = Bv.op(Bv.op(bb, B.alpha(ff).apply(pb.to_left.apply(d))), Bv.inv(bb));
                Elem right = Cw.op(Cw.op(cc, C.alpha(gg).apply(pb.to_right.apply(d))), Cw.inv(cc));
                auto z2 = target.to_left.preimage(left);
                if (!z2 || target.to_right.apply(*z2) != right)
                    throw Error(Errc::invariant, "edge group does not land in the vertex group");
                return *z2;
            });
        };
        Mono al = edge_map(f, g, b, c, x);
        Mono om = edge_map(fi, gi, bi, ci, y);
        int h = G->add_edge(edge_label(muB, muC, f, g, rep), edge_label(muB, muC, fi, gi, rep), x, y, pb.group, al, om);
        epb.push_back(pb);
        epb.push_back(pb);
        P.edges.push_back({f, g, rep, b, c});
        P.edges.push_back({fi, gi, rep, bi, ci});
        P.eindex[{f, g, rep}] = h;
        P.eindex[{fi, gi, rep}] = h + 1;
    }

    Elem target_rep(int f, int g, Elem rep) {
        const Graph& B = *muB.source;
        const Graph& C = *muC.source;
        int fi = B.inv(f), gi = C.inv(g);
        return vertex_cosets(muB, muC, B.origin(fi), C.origin(gi)).canonical(incidence(muB, muC, fi, gi, rep));
    }

    void explore(const std::vector<std::tuple<int, int, Elem>>& seeds) {
        const Graph& B = *muB.source;
        const Graph& C = *muC.source;
        if (seeds.empty()) throw Error(Errc::empty_window, "no product vertex inside the window");
        std::vector<int> depth;
        std::deque<int> q;
        for (auto& [v, w, r] : seeds) {
            int x = add_vertex(v, w, r);
            if (x == static_cast<int>(depth.size())) {
                depth.push_back(0);
                q.push_back(x);
                P.seeds.push_back(x);
            }
        }
        struct Pending {
            int f, g;
            Elem rep;
            int x;
        };
        std::vector<Pending> found;
        auto scan = [&](int x) -> std::vector<Pending> {
            std::vector<Pending> out;
            ProductVertex pv = P.verts[x];
            for (int f : B.star(pv.v))
                for (int g : C.star(pv.w)) {
                    if (muB.e(f) != muC.e(g)) continue;
                    bool trunc = false;
                    for (Elem r : edges_at(muB, muC, f, g, pv.rep, opt.coset_window, trunc)) out.push_back({f, g, r, x});
                    if (trunc) P.complete = false;
                }
            return out;
        };
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            auto here = scan(x);
            for (auto& pe : here) {
                found.push_back(pe);
                if (depth[x] >= opt.radius) continue;
                Elem tr = target_rep(pe.f, pe.g, pe.rep);
                int fi = B.inv(pe.f), gi = C.inv(pe.g);
                int y = add_vertex(B.origin(fi), C.origin(gi), tr);
                if (y == static_cast<int>(depth.size())) {
                    depth.push_back(depth[x] + 1);
                    q.push_back(y);
                }
            }
        }
        for (auto& pe : found) {
            if (P.eindex.count({pe.f, pe.g, pe.rep})) continue;
            int fi = B.inv(pe.f), gi = C.inv(pe.g);
            auto y = P.find_vertex(B.origin(fi), C.origin(gi), target_rep(pe.f, pe.g, pe.rep));
            if (!y) {
                P.complete = false;
                continue;
            }
            add_edge(pe.f, pe.g, pe.rep, pe.x, *y);
        }
    }

    Product finish() {
        const Graph& D = *G;
        auto make = [&](bool left) {
            Morphism r;
            r.source = G;
            r.target = left ? muB.source : muC.source;
            for (int x = 0; x < D.nv(); ++x) {
                r.vmap.push_back(left ? P.verts[x].v : P.verts[x].w);
                r.vmono.push_back(left ? vpb[x].to_left : vpb[x].to_right);
            }
            for (int h = 0; h < D.ne(); ++h) {
                r.emap.push_back(left ? P.edges[h].f : P.edges[h].g);
                r.emono.push_back(left ? epb[h].to_left : epb[h].to_right);
                r.twist.push_back(left ? P.edges[h].b : P.edges[h].c);
            }
            return r;
        };
        P.graph = G;
        P.rhoB = make(true);
        P.rhoC = make(false);
        return std::move(P);
    }
};

}  // namespace

std::optional<int> Product::find_vertex(int v, int w, Elem rep) const {
    auto it = vindex.find({v, w, rep});
    if (it == vindex.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Product::find_edge(int f, int g, Elem rep) const {
    auto it = eindex.find({f, g, rep});
    if (it == eindex.end()) return std::nullopt;
    return it->second;
}

Elem Product::vertex_class(int v, int w, Elem a) const { return vertex_cosets(muB, muC, v, w).canonical(a); }

Elem Product::edge_class(int f, int g, Elem a) const { return edge_cosets(muB, muC, f, g).canonical(a); }

Product build_product(const Morphism& muB, const Morphism& muC, const ProductOptions& opt) {
    Builder b(muB, muC, opt);
    std::vector<std::tuple<int, int, Elem>> seeds;
    for (int v = 0; v < muB.source->nv(); ++v)
        for (int w = 0; w < muC.source->nv(); ++w) {
            if (muB.v(v) != muC.v(w)) continue;
            DoubleCosets dc = vertex_cosets(muB, muC, v, w);
            if (!dc.finite()) b.P.complete = false;
            for (Elem r : dc.representatives(opt.coset_window)) seeds.emplace_back(v, w, r);
        }
    b.explore(seeds);
    return b.finish();
}

Product pointed_product(const Morphism& muB, const Morphism& muC, const ProductOptions& opt) {
    const Graph& B = *muB.source;
    const Graph& C = *muC.source;
    if (!B.basepoint || !C.basepoint) throw Error(Errc::unsupported, "pointed product needs basepoints");
    int v0 = *B.basepoint, w0 = *C.basepoint;
    if (muB.v(v0) != muC.v(w0)) throw Error(Errc::invariant, "basepoints lie over different vertices");
    Builder b(muB, muC, opt);
    Elem one = muB.target->vgroup(muB.v(v0))->id();
    Elem rep = vertex_cosets(muB, muC, v0, w0).canonical(one);
    if (rep != one) throw Error(Errc::invariant, "basepoint representative is not the identity");
    b.explore({{v0, w0, rep}});
    b.G->basepoint = 0;
    return b.finish();
}

Certificate square_certificate(const Product& p) {
    Certificate c;
    for (auto& x : p.verts) c.vparams.push_back(x.rep);
    for (auto& h : p.edges) c.eparams.push_back(h.rep);
    return c;
}

Lift lift(const Product& p, const Morphism& sigB, const Morphism& sigC, const Certificate& a, const Certificate& d) {
    Morphism top = compose(p.muB, sigB), bottom = compose(p.muC, sigC);
    std::string why;
    if (!check_certificate(top, bottom, a, &why)) throw Error(Errc::invalid_certificate, why);
    if (!check_certificate(bottom, bottom, d, &why)) throw Error(Errc::invalid_centralizer_element, why);
    const Graph& Dp = *sigB.source;
    const Graph& A = *p.muB.target;
    const Graph& B = *p.muB.source;
    const Graph& C = *p.muC.source;
    const Graph& D = *p.graph;
    Lift out;
    Morphism& s = out.sigma;
    s.source = sigB.source;
    s.target = p.graph;
    for (int y = 0; y < Dp.nv(); ++y) {
        int v = sigB.v(y), w = sigC.v(y);
        const Group& G = *A.vgroup(top.v(y));
        Elem val = G.op(a.vparams[y], d.vparams[y]);
        Elem rep = p.vertex_class(v, w, val);
        auto x = p.find_vertex(v, w, rep);
        if (!x) throw Error(Errc::window_exceeded, "lift of " + Dp.vname(y) + " falls outside the explored product");
        auto bc = vertex_cosets(p.muB, p.muC, v, w).factor(val, rep);
        if (!bc) throw Error(Errc::invariant, "lift representative does not factor");
        Elem by = bc->first, cy = C.vgroup(w)->inv(bc->second);
        s.vmap.push_back(*x);
        out.to_B.vparams.push_back(by);
        out.to_C.vparams.push_back(cy);
    }
    for (int h = 0; h < Dp.ne(); ++h) {
        int f = sigB.e(h), g = sigC.e(h);
        const Group& E = *A.egroup(top.e(h));
        Elem val = E.op(a.eparams[h], d.eparams[h]);
        Elem rep = p.edge_class(f, g, val);
        auto k = p.find_edge(f, g, rep);
        if (!k) throw Error(Errc::window_exceeded, "lift of " + Dp.ename(h) + " falls outside the explored product");
        auto bc = edge_cosets(p.muB, p.muC, f, g).factor(val, rep);
        if (!bc) throw Error(Errc::invariant, "lift edge representative does not factor");
        s.emap.push_back(*k);
        out.to_B.eparams.push_back(bc->first);
        out.to_C.eparams.push_back(C.egroup(g)->inv(bc->second));
    }
    auto pair_in = [&](const Mono& toL, const Mono& toR, Elem l, Elem r, const std::string& where) {
        auto z = toL.preimage(l);
        if (!z || toR.apply(*z) != r) throw Error(Errc::invariant, "lift does not land in the pullback group at " + where);
        return *z;
    };
    for (int y = 0; y < Dp.nv(); ++y) {
        int x = s.vmap[y];
        int v = sigB.v(y), w = sigC.v(y);
        const Group& Bv = *B.vgroup(v);
        const Group& Cw = *C.vgroup(w);
        Elem by = out.to_B.vparams[y], cy = out.to_C.vparams[y];
        const Mono& toL = p.rhoB.vmono[x];
        const Mono& toR = p.rhoC.vmono[x];
        s.vmono.push_back(Mono::from_function(Dp.vgroup(y), D.vgroup(x), [&](Elem z) {
            Elem l = Bv.op(Bv.op(by, sigB.vmono[y].apply(z)), Bv.inv(by));
            Elem r = Cw.op(Cw.op(cy, sigC.vmono[y].apply(z)), Cw.inv(cy));
            return pair_in(toL, toR, l, r, Dp.vname(y));
        }));
    }
    for (int h = 0; h < Dp.ne(); ++h) {
        int k = s.emap[h];
        int f = sigB.e(h), g = sigC.e(h);
        const Group& Bf = *B.egroup(f);
        const Group& Cg = *C.egroup(g);
        Elem bh = out.to_B.eparams[h], ch = out.to_C.eparams[h];
        const Mono& toL = p.rhoB.emono[k];
        const Mono& toR = p.rhoC.emono[k];
        s.emono.push_back(Mono::from_function(Dp.egroup(h), D.egroup(k), [&](Elem z) {
            Elem l = Bf.op(Bf.op(bh, sigB.emono[h].apply(z)), Bf.inv(bh));
            Elem r = Cg.op(Cg.op(ch, sigC.emono[h].apply(z)), Cg.inv(ch));
            return pair_in(toL, toR, l, r, Dp.ename(h));
        }));
        int y = Dp.origin(h), x = s.vmap[y];
        int v = sigB.v(y), w = sigC.v(y);
        const Group& Bv = *B.vgroup(v);
        const Group& Cw = *C.vgroup(w);
        Elem l = Bv.op(Bv.op(Bv.op(out.to_B.vparams[y], sigB.alpha_twist(h)), Bv.inv(B.alpha(f).apply(bh))),
                       Bv.inv(p.edges[k].b));
        Elem r = Cw.op(Cw.op(Cw.op(out.to_C.vparams[y], sigC.alpha_twist(h)), Cw.inv(C.alpha(g).apply(ch))),
                       Cw.inv(p.edges[k].c));
        s.twist.push_back(pair_in(p.rhoB.vmono[x], p.rhoC.vmono[x], l, r, Dp.ename(h)));
    }
    s.validate();
    Morphism rb = compose(p.rhoB, s), rc = compose(p.rhoC, s);
    if (!check_certificate(rb, sigB, out.to_B, &why)) throw Error(Errc::invariant, "lift fails its left certificate: " + why);
    if (!check_certificate(rc, sigC, out.to_C, &why)) throw Error(Errc::invariant, "lift fails its right certificate: " + why);
    return out;
}

bool lifts_equivalent(const Product& p, const Morphism& sigB, const Morphism& sigC, const Certificate& a,
                      const Certificate& d1, const Certificate& d2, Elem window) {
    Morphism bottom = compose(p.muC, sigC);
    const Graph& Dp = *sigB.source;
    const Graph& A = *p.muB.target;
    Centralizer cz = centralizer(bottom, window);
    for (const Certificate& t : cz.elements) {
        bool ok = true;
        for (int y = 0; y < Dp.nv() && ok; ++y) {
            const Group& G = *A.vgroup(bottom.v(y));
            Elem l = G.op(a.vparams[y], d1.vparams[y]);
            Elem r = G.op(a.vparams[y], d2.vparams[y]);
            // t_y = muC(gamma) = l^-1 muB(beta) r
            ok = p.muC.vmono[sigC.v(y)].in_image(t.vparams[y]) &&
                 p.muB.vmono[sigB.v(y)].in_image(G.op(G.op(l, t.vparams[y]), G.inv(r)));
        }
        if (ok) return true;
    }
    return false;
}

std::vector<ComponentInfo> components(const Product& p) {
    const Graph& D = *p.graph;
    const Graph& B = *p.muB.source;
    const Graph& C = *p.muC.source;
    const Graph& A = *p.muB.target;
    int n = 0;
    auto comp = component_ids(D, &n);
    std::vector<ComponentInfo> out(n);
    for (int x = 0; x < D.nv(); ++x) {
        out[comp[x]].vertices.push_back(x);
        if (D.vgroup(x)->kind() != Group::Kind::trivial) out[comp[x]].nontrivial_groups = true;
    }
    std::vector<int> edges(n, 0);
    for (int h = 0; h < D.ne(); ++h) ++edges[comp[D.origin(h)]];
    for (int k = 0; k < n; ++k)
        out[k].betti = edges[k] / 2 - static_cast<long>(out[k].vertices.size()) + 1;
    int v0 = B.basepoint.value_or(0), w0 = C.basepoint.value_or(0);
    auto tb = spanning_tree(B, v0);
    auto tc = spanning_tree(C, w0);
    for (auto& ci : out) {
        int x = ci.vertices.front();
        const ProductVertex& pv = p.verts[x];
        if (tb.depth[pv.v] < 0 || tc.depth[pv.w] < 0) {
            ci.key = trivial_path(A, p.muB.v(pv.v));
            continue;
        }
        Path pb = apply_path(p.muB, tree_path(B, tb, pv.v));
        Path qc = apply_path(p.muC, tree_path(C, tc, pv.w));
        ci.key = reduce(A, concat(A, right_mul(A, pb, pv.rep), invert(A, qc)));
    }
    return out;
}

namespace {

std::vector<Path> words(const Graph& A, int u, const std::vector<Path>& gens, int depth) {
    std::vector<Path> all{trivial_path(A, u)};
    std::vector<Path> letters = gens;
    for (auto& g : gens) letters.push_back(invert(A, g));
    std::vector<Path> frontier = all;
    for (int k = 0; k < depth; ++k) {
        std::vector<Path> next;
        for (auto& w : frontier)
            for (auto& l : letters) next.push_back(reduce(A, concat(A, w, l)));
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return all;
}

}  // namespace

bool same_double_coset(const Product& p, const Path& key1, const Path& key2, int depth) {
    const Graph& A = *p.muB.target;
    const Graph& B = *p.muB.source;
    const Graph& C = *p.muC.source;
    int v0 = B.basepoint.value_or(0), w0 = C.basepoint.value_or(0);
    std::vector<Path> gb, gc;
    for (auto& q : pi1_generators(B, v0)) gb.push_back(apply_path(p.muB, q));
    for (auto& q : pi1_generators(C, w0)) gc.push_back(apply_path(p.muC, q));
    auto bs = words(A, p.muB.v(v0), gb, depth);
    auto cs = words(A, p.muC.v(w0), gc, depth);
    for (auto& b : bs)
        for (auto& c : cs)
            if (eq_equal(A, key2, concat(A, concat(A, b, key1), c))) return true;
    return false;
}

Generators intersection_generators(const Product& p) {
    if (!is_immersion(p.muB) || !is_immersion(p.muC))
        throw Error(Errc::unsupported, "intersection generators need immersions");
    const Graph& D = *p.graph;
    if (!D.basepoint) throw Error(Errc::unsupported, "intersection generators need a pointed product");
    Generators out;
    out.complete = p.complete;
    Morphism down = compose(p.muB, p.rhoB);
    for (auto& q : pi1_generators(D, *D.basepoint)) {
        out.loops.push_back(q);
        out.images.push_back(reduce(*down.target, apply_path(down, q)));
    }
    return out;
}

std::vector<GrowthRow> rank_growth(const Morphism& muB, const Morphism& muC, const std::vector<int>& radii,
                                   Elem coset_window) {
    std::vector<GrowthRow> rows;
    for (int r : radii) {
        Product p = pointed_product(muB, muC, {r, coset_window});
        auto c = pointed_core(*p.graph, *p.graph->basepoint);
        rows.push_back({r, c.graph.nv(), c.graph.ne() / 2, betti(c.graph), p.complete});
    }
    return rows;
}

bool strictly_increasing(const std::vector<GrowthRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].betti <= rows[i - 1].betti) return false;
    return rows.size() > 1;
}

}  // namespace gog
