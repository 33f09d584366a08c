#include "gog/gog.h"

#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "covers.hpp"
#include "document.hpp"
#include "fixtures.hpp"

using namespace gog;

struct gog_doc {
    Document doc;
};

struct gog_report {
    std::string json;
    std::string dot;
    bool has_dot = false;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_kind;

void clear_error() {
    last_error.clear();
    last_kind.clear();
}

gog_status set_error(const char* kind, const std::string& what) {
    last_kind = kind;
    last_error = what;
    return GOG_USAGE;
}

template <class F>
gog_status guarded(F&& f) {
    clear_error();
    try {
        return f();
    } catch (const Error& e) {
        return set_error(errc_name(e.code()), e.what());
    } catch (const std::exception& e) {
        return set_error("Error", e.what());
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ProductOptions product_options(const gog_options& o) { return {o.radius, o.coset_window}; }

struct Ctx {
    Document& doc;
    const std::vector<std::string>& args;
    gog_options opt;
    ojson report;
    std::string dot;
    bool has_dot = false;

    void arity(std::size_t n, const char* usage) const {
        if (args.size() != n) throw Error(Errc::parse, std::string("usage: ") + usage);
    }
    const Morphism& morphism(std::size_t i) const { return doc.morphisms.at(args.at(i), "morphism"); }
    GraphPtr graph(std::size_t i) const { return doc.graphs.at(args.at(i), "graph"); }
    const NamedPath& path(std::size_t i) const { return doc.paths.at(args.at(i), "path"); }
    void draw(const std::string& d) {
        dot = d;
        has_dot = true;
    }
};

ojson pj(const Graph& g, const Path& p) {
    ojson j = path_json(g, p);
    j["text"] = format_path(g, p);
    return j;
}

ojson defects_json(const Morphism& m, const std::vector<StarDefect>& ds) {
    ojson a = ojson::array();
    for (auto& d : ds)
        a.push_back({{"vertex", m.source->vname(d.vertex)},
                     {"edge", d.edge >= 0 ? ojson(m.target->ename(d.edge)) : ojson(nullptr)},
                     {"what", d.what}});
    return a;
}

ojson certificate_json(const Morphism& m1, const Certificate& c) {
    const Graph& B = *m1.source;
    const Graph& A = *m1.target;
    ojson v = ojson::object(), e = ojson::object();
    for (int x = 0; x < B.nv(); ++x) v[B.vname(x)] = element_json(*A.vgroup(m1.v(x)), c.vparams[x]);
    for (int f = 0; f < B.ne(); ++f) e[B.ename(f)] = element_json(*A.egroup(m1.e(f)), c.eparams[f]);
    return {{"vertices", v}, {"edges", e}, {"pointed", c.pointed}};
}

ojson product_summary(const Product& P) {
    const Graph& D = *P.graph;
    ojson verts = ojson::array();
    for (int x = 0; x < D.nv(); ++x) verts.push_back({{"name", D.vname(x)}, {"group", D.vgroup(x)->describe()}});
    return {{"vertices", D.nv()},
            {"edges", D.ne() / 2},
            {"complete", P.complete},
            {"radius", P.options.radius},
            {"coset_window", P.options.coset_window},
            {"vertex_list", verts}};
}

bool all_groups_trivial(const Graph& g) {
    for (int v = 0; v < g.nv(); ++v)
        if (g.vgroup(v)->kind() != Group::Kind::trivial) return false;
    for (int e = 0; e < g.ne(); ++e)
        if (g.egroup(e)->kind() != Group::Kind::trivial) return false;
    return true;
}

gog_status cmd_validate(Ctx& c) {
    c.arity(0, "validate FILE");
    c.report["groups"] = c.doc.groups.items.size();
    c.report["graphs"] = c.doc.graphs.items.size();
    c.report["morphisms"] = c.doc.morphisms.items.size();
    c.report["paths"] = c.doc.paths.items.size();
    c.report["valid"] = true;
    return GOG_OK;
}

gog_status cmd_reduce(Ctx& c) {
    c.arity(1, "reduce FILE PATH");
    const NamedPath& p = c.path(0);
    const Graph& g = *c.doc.graphs.at(p.graph, "graph");
    Path r = reduce(g, p.path);
    c.report["input"] = pj(g, p.path);
    c.report["reduced"] = pj(g, r);
    c.report["changed"] = !(r == p.path);
    return GOG_OK;
}

gog_status cmd_equal(Ctx& c) {
    c.arity(2, "equal FILE PATH PATH");
    const NamedPath& p = c.path(0);
    const NamedPath& q = c.path(1);
    if (p.graph != q.graph) throw Error(Errc::owner_mismatch, "paths live in different graphs");
    const Graph& g = *c.doc.graphs.at(p.graph, "graph");
    bool eq = eq_equal(g, p.path, q.path);
    c.report["sim"] = sim_equal(g, p.path, q.path);
    c.report["eq"] = eq;
    return eq ? GOG_OK : GOG_NEGATIVE;
}

gog_status cmd_image(Ctx& c) {
    c.arity(2, "image FILE MORPHISM PATH");
    const Morphism& m = c.morphism(0);
    const NamedPath& p = c.path(1);
    if (c.doc.graphs.at(p.graph, "graph") != m.source) throw Error(Errc::owner_mismatch, "path is not in the source graph");
    Path img = apply_path(m, p.path);
    c.report["image"] = pj(*m.target, img);
    c.report["reduced"] = pj(*m.target, reduce(*m.target, img));
    return GOG_OK;
}

gog_status cmd_immersion(Ctx& c) {
    c.arity(1, "immersion FILE MORPHISM");
    const Morphism& m = c.morphism(0);
    auto r = immersion_report(m);
    c.report["immersion"] = r.ok;
    c.report["defects"] = defects_json(m, r.defects);
    return r.ok ? GOG_OK : GOG_NEGATIVE;
}

gog_status cmd_covering(Ctx& c) {
    c.arity(1, "covering FILE MORPHISM");
    const Morphism& m = c.morphism(0);
    auto r = covering_report(m, c.opt.coset_window);
    c.report["covering"] = r.ok;
    c.report["window_qualified"] = r.window_qualified;
    c.report["defects"] = defects_json(m, r.defects);
    if (!r.ok) return GOG_NEGATIVE;
    return r.window_qualified ? GOG_INCONCLUSIVE : GOG_OK;
}

gog_status cmd_equivalent(Ctx& c) {
    c.arity(2, "equivalent FILE MORPHISM MORPHISM");
    const Morphism& m1 = c.morphism(0);
    const Morphism& m2 = c.morphism(1);
    auto cert = find_equivalence(m1, m2, c.opt.pointed != 0);
    c.report["pointed"] = c.opt.pointed != 0;
    c.report["equivalent"] = cert.has_value();
    if (cert) c.report["certificate"] = certificate_json(m1, *cert);
    return cert ? GOG_OK : GOG_NEGATIVE;
}

gog_status cmd_product(Ctx& c, bool pointed) {
    c.arity(2, pointed ? "pullback FILE MORPHISM MORPHISM" : "product FILE MORPHISM MORPHISM");
    const Morphism& mB = c.morphism(0);
    const Morphism& mC = c.morphism(1);
    Product P = pointed ? pointed_product(mB, mC, product_options(c.opt)) : build_product(mB, mC, product_options(c.opt));
    c.report["product"] = product_summary(P);
    auto comps = components(P);
    c.report["components"] = comps.size();
    ojson cj = ojson::array();
    for (auto& ci : comps)
        cj.push_back({{"vertices", ci.vertices.size()}, {"betti", ci.betti}, {"nontrivial_groups", ci.nontrivial_groups}});
    c.report["component_list"] = cj;
    c.report["all_groups_trivial"] = all_groups_trivial(*P.graph);
    std::string why;
    c.report["square_certificate"] =
        check_certificate(compose(P.muB, P.rhoB), compose(P.muC, P.rhoC), square_certificate(P), &why);
    if (pointed) {
        auto core = pointed_core(*P.graph, *P.graph->basepoint);
        c.report["core_betti"] = betti(core.graph);
        if (is_immersion(mB) && is_immersion(mC)) {
            auto gens = intersection_generators(P);
            ojson imgs = ojson::array();
            for (auto& p : gens.images) imgs.push_back(format_path(*mB.target, p));
            c.report["intersection_generators"] = imgs;
        }
    }
    c.draw(to_dot(*P.graph, pointed ? "pullback" : "product", &P.rhoB));
    return GOG_OK;
}

gog_status cmd_core(Ctx& c) {
    c.arity(1, "core FILE GRAPH");
    GraphPtr g = c.graph(0);
    bool pointed = c.opt.pointed && g->basepoint;
    Subgraph s = pointed ? pointed_core(*g, *g->basepoint) : core(*g);
    ojson vs = ojson::array(), es = ojson::array();
    for (int v : s.vmap) vs.push_back(g->vname(v));
    for (std::size_t i = 0; i < s.emap.size(); i += 2) es.push_back(g->ename(s.emap[i]));
    c.report["pointed"] = pointed;
    c.report["vertices"] = vs;
    c.report["edges"] = es;
    c.report["betti"] = betti(s.graph);
    c.draw(to_dot(s.graph, "core"));
    return GOG_OK;
}

gog_status cmd_components(Ctx& c) {
    c.arity(2, "components FILE MORPHISM MORPHISM");
    const Morphism& mB = c.morphism(0);
    const Morphism& mC = c.morphism(1);
    Product P = build_product(mB, mC, product_options(c.opt));
    auto comps = components(P);
    ojson cj = ojson::array();
    bool merged = false;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        ojson vs = ojson::array();
        for (int x : comps[i].vertices) vs.push_back(P.graph->vname(x));
        ojson same = ojson::array();
        for (std::size_t k = 0; k < i; ++k)
            if (same_double_coset(P, comps[k].key, comps[i].key, c.opt.depth)) {
                same.push_back(k);
                merged = true;
            }
        cj.push_back({{"vertices", vs},
                      {"betti", comps[i].betti},
                      {"nontrivial_groups", comps[i].nontrivial_groups},
                      {"key", format_path(*mB.target, comps[i].key)},
                      {"same_double_coset_as", same}});
    }
    c.report["components"] = cj;
    c.report["count"] = comps.size();
    c.report["complete"] = P.complete;
    c.report["keys_distinct_within_depth"] = !merged;
    return GOG_OK;
}

gog_status cmd_intersect(Ctx& c) {
    c.arity(2, "intersect FILE MORPHISM MORPHISM");
    const Morphism& mB = c.morphism(0);
    const Morphism& mC = c.morphism(1);
    Product P = pointed_product(mB, mC, product_options(c.opt));
    auto gens = intersection_generators(P);
    ojson loops = ojson::array(), imgs = ojson::array();
    for (auto& p : gens.loops) loops.push_back(format_path(*P.graph, p));
    for (auto& p : gens.images) imgs.push_back(pj(*mB.target, p));
    c.report["loops"] = loops;
    c.report["generators"] = imgs;
    c.report["complete"] = gens.complete;
    return gens.complete ? GOG_OK : GOG_INCONCLUSIVE;
}

gog_status cmd_conjugate(Ctx& c) {
    c.arity(2, "conjugate FILE PATH PATH");
    const NamedPath& p = c.path(0);
    const NamedPath& q = c.path(1);
    if (p.graph != q.graph) throw Error(Errc::owner_mismatch, "paths live in different graphs");
    const Graph& g = *c.doc.graphs.at(p.graph, "graph");
    auto cp = cyclic_reduce(g, p.path);
    auto cq = cyclic_reduce(g, q.path);
    auto res = collins_conjugate(g, cp.core, cq.core, c.opt.depth);
    c.report["p_core"] = format_path(g, cp.core);
    c.report["q_core"] = format_path(g, cq.core);
    switch (res.status) {
        case Conjugacy::Status::found: {
            // p = r1^-1 p' r1, q = r2^-1 q' r2, q' = r^-1 p' r
            Path R = reduce(g, concat(g, concat(g, invert(g, cp.conjugator), res.conjugator), cq.conjugator));
            c.report["verdict"] = "conjugate";
            c.report["conjugator"] = pj(g, R);
            c.report["verified"] = eq_equal(g, q.path, concat(g, concat(g, invert(g, R), p.path), R));
            return GOG_OK;
        }
        case Conjugacy::Status::absent: c.report["verdict"] = "not conjugate"; return GOG_NEGATIVE;
        case Conjugacy::Status::unknown: c.report["verdict"] = "undecided within depth"; return GOG_INCONCLUSIVE;
    }
    return GOG_USAGE;
}

gog_status cmd_tree(Ctx& c) {
    if (c.args.empty() || c.args.size() > 2) throw Error(Errc::parse, "usage: tree FILE GRAPH [VERTEX]");
    GraphPtr g = c.graph(0);
    int u = c.args.size() == 2 ? g->vertex_or_throw(c.args[1]) : g->basepoint.value_or(0);
    if (g->nv() == 0) throw Error(Errc::unknown_vertex, "empty graph");
    TreeBall t = bass_serre_ball(*g, u, c.opt.radius, c.opt.coset_window);
    std::map<int, int> degrees;
    for (int x = 0; x < t.tree.nv(); ++x)
        if (t.depth[x] < t.radius) ++degrees[static_cast<int>(t.tree.star(x).size())];
    ojson dj = ojson::object();
    for (auto [d, n] : degrees) dj[std::to_string(d)] = n;
    c.report["center"] = g->vname(u);
    c.report["radius"] = t.radius;
    c.report["vertices"] = t.tree.nv();
    c.report["center_degree"] = t.tree.star(0).size();
    c.report["expected_center_degree"] = expected_degree(*g, u);
    c.report["interior_degrees"] = dj;
    c.report["acyclic"] = tree_ball_acyclic(*g, t);
    c.report["truncated"] = t.truncated;
    c.draw(to_dot(t.tree, "tree"));
    return t.truncated ? GOG_INCONCLUSIVE : GOG_OK;
}

gog_status cmd_acylindrical(Ctx& c) {
    c.arity(1, "acylindrical FILE GRAPH");
    GraphPtr g = c.graph(0);
    auto r = is_k_acylindrical(*g, c.opt.k, c.opt.coset_window);
    c.report["k"] = c.opt.k;
    c.report["paths_checked"] = r.paths_checked;
    switch (r.verdict) {
        case Acylindricity::Verdict::yes: c.report["verdict"] = "acylindrical"; return GOG_OK;
        case Acylindricity::Verdict::unknown: c.report["verdict"] = "no witness within window"; return GOG_INCONCLUSIVE;
        case Acylindricity::Verdict::no: {
            const Graph& A = *g;
            c.report["verdict"] = "not acylindrical";
            c.report["witness"] = pj(A, r.witness);
            c.report["element"] = element_json(*A.vgroup(path_end(A, r.witness)), r.element);
            Path w = reduce(A, concat(A, right_mul(A, r.witness, r.element), invert(A, r.witness)));
            c.report["reduces_to"] = pj(A, w);
            return GOG_NEGATIVE;
        }
    }
    return GOG_USAGE;
}

using Command = gog_status (*)(Ctx&);

const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table{
        {"validate", cmd_validate},
        {"reduce", cmd_reduce},
        {"equal", cmd_equal},
        {"image", cmd_image},
        {"immersion", cmd_immersion},
        {"covering", cmd_covering},
        {"equivalent", cmd_equivalent},
        {"product", [](Ctx& c) { return cmd_product(c, false); }},
        {"pullback", [](Ctx& c) { return cmd_product(c, true); }},
        {"core", cmd_core},
        {"components", cmd_components},
        {"intersect", cmd_intersect},
        {"conjugate", cmd_conjugate},
        {"tree", cmd_tree},
        {"acylindrical", cmd_acylindrical},
    };
    return table;
}

gog_report* make_report(const ojson& j, const std::string& dot, bool has_dot) {
    auto* r = new gog_report;
    r->json = j.dump(2) + "\n";
    r->dot = dot;
    r->has_dot = has_dot;
    return r;
}

std::size_t section_size(const gog_doc* d, gog_section s) {
    switch (s) {
        case GOG_GROUPS: return d->doc.groups.items.size();
        case GOG_GRAPHS: return d->doc.graphs.items.size();
        case GOG_MORPHISMS: return d->doc.morphisms.items.size();
        case GOG_PATHS: return d->doc.paths.items.size();
    }
    return 0;
}

gog_doc* parse_into(const std::string& text) {
    auto* d = new gog_doc;
    try {
        d->doc = parse_document(text);
    } catch (...) {
        delete d;
        throw;
    }
    return d;
}

}  // namespace

extern "C" {

void gog_options_init(gog_options* opt) {
    opt->radius = 6;
    opt->coset_window = 5;
    opt->depth = 4;
    opt->k = 1;
    opt->pointed = 0;
}

gog_status gog_doc_parse(const char* text, size_t len, gog_doc** out) {
    return guarded([&] {
        if (!out) throw Error(Errc::parse, "null output handle");
        *out = parse_into(std::string(text ? text : "", text ? len : 0));
        return GOG_OK;
    });
}

gog_status gog_doc_load(const char* path, gog_doc** out) {
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(Errc::parse, std::string("cannot read ") + path);
        std::stringstream ss;
        ss << in.rdbuf();
        if (!out) throw Error(Errc::parse, "null output handle");
        *out = parse_into(ss.str());
        return GOG_OK;
    });
}

gog_doc* gog_doc_empty(void) { return new gog_doc; }

void gog_doc_free(gog_doc* doc) { delete doc; }

size_t gog_doc_count(const gog_doc* doc, gog_section s) { return doc ? section_size(doc, s) : 0; }

const char* gog_doc_name(const gog_doc* doc, gog_section s, size_t i) {
    if (!doc || i >= gog_doc_count(doc, s)) return nullptr;
    switch (s) {
        case GOG_GROUPS: return doc->doc.groups.items[i].first.c_str();
        case GOG_GRAPHS: return doc->doc.graphs.items[i].first.c_str();
        case GOG_MORPHISMS: return doc->doc.morphisms.items[i].first.c_str();
        case GOG_PATHS: return doc->doc.paths.items[i].first.c_str();
    }
    return nullptr;
}

gog_status gog_doc_emit(const gog_doc* doc, char** out) {
    return guarded([&] {
        if (!doc || !out) throw Error(Errc::parse, "null handle");
        *out = dup(emit_document(doc->doc));
        return GOG_OK;
    });
}

gog_status gog_run(gog_doc* doc, const char* command, const char* const* args, size_t nargs, const gog_options* opt,
                   gog_report** out) {
    return guarded([&] {
        if (!doc || !command || !out) throw Error(Errc::parse, "null handle");
        auto it = commands().find(command);
        if (it == commands().end()) throw Error(Errc::parse, std::string("unknown command '") + command + "'");
        std::vector<std::string> a;
        for (size_t i = 0; i < nargs; ++i) a.emplace_back(args[i]);
        gog_options o;
        gog_options_init(&o);
        if (opt) o = *opt;
        Ctx c{doc->doc, a, o, ojson::object(), "", false};
        c.report["schema"] = 1;
        c.report["command"] = command;
        c.report["args"] = a;
        gog_status s = it->second(c);
        c.report["status"] = static_cast<int>(s);
        *out = make_report(c.report, c.dot, c.has_dot);
        return s;
    });
}

gog_status gog_demo_bs(long m, long n, const gog_options* opt, gog_report** out) {
    return guarded([&] {
        if (!out) throw Error(Errc::parse, "null handle");
        if (m < 1 || n == 0) throw Error(Errc::parse, "demo-bs needs m >= 1 and n != 0");
        gog_options o;
        gog_options_init(&o);
        if (opt) o = *opt;
        Pair P = bs_pair(m, n);
        std::vector<int> radii;
        for (int r = 2; r <= o.radius; ++r) radii.push_back(r);
        auto rows = rank_growth(P.muB, P.muC, radii, o.coset_window);

        Product D = pointed_product(P.muB, P.muC, {o.radius, o.coset_window});
        long checked = 0, mismatched = 0;
        int gplus = *P.muC.source->edge("g+");
        int gminus = *P.muC.source->edge("g-");
        for (std::size_t h = 0; h < D.edges.size(); ++h) {
            const ProductEdge& pe = D.edges[h];
            if (pe.f % 2 || (pe.g != gplus && pe.g != gminus)) continue;
            Elem j = pe.f / 2, i = pe.rep;
            Elem o0 = pe.g == gplus ? m * i + j : m * i + j - 1;
            Elem t0 = pe.g == gplus ? n * i + j + 1 : n * i + j;
            const ProductVertex& x = D.verts[D.graph->origin(static_cast<int>(h))];
            const ProductVertex& y = D.verts[D.graph->target(static_cast<int>(h))];
            ++checked;
            if (x.rep != o0 || y.rep != t0) ++mismatched;
        }

        ojson j;
        j["schema"] = 1;
        j["command"] = "demo-bs";
        j["m"] = m;
        j["n"] = n;
        j["muB_immersion"] = is_immersion(P.muB);
        j["muC_immersion"] = is_immersion(P.muC);
        j["incidence_edges_checked"] = checked;
        j["incidence_mismatches"] = mismatched;
        ojson table = ojson::array();
        for (auto& r : rows)
            table.push_back({{"radius", r.radius}, {"vertices", r.vertices}, {"edges", r.edges}, {"betti", r.betti},
                             {"complete", r.complete}});
        j["betti_table"] = table;
        bool rising = strictly_increasing(rows);
        int settled = -1;
        if (rows.size() >= 2 && rows.back().betti == rows[rows.size() - 2].betti) {
            settled = rows.back().radius;
            for (std::size_t k = rows.size() - 1; k > 0 && rows[k - 1].betti == rows.back().betti; --k)
                settled = rows[k - 1].radius;
        }
        gog_status s = GOG_OK;
        if (rising) {
            j["verdict"] = "fgip counterexample evidence";
        } else if (settled >= 0) {
            j["verdict"] = "betti stabilizes";
            j["stable_from_radius"] = settled;
        } else {
            j["verdict"] = "no verdict within radius";
            s = GOG_INCONCLUSIVE;
        }
        j["status"] = static_cast<int>(s);
        Graph core = pointed_core(*D.graph, *D.graph->basepoint).graph;
        *out = make_report(j, to_dot(core, "bs-core"), true);
        return mismatched ? GOG_NEGATIVE : s;
    });
}

const char* gog_report_json(const gog_report* r) { return r ? r->json.c_str() : nullptr; }

const char* gog_report_dot(const gog_report* r) { return r && r->has_dot ? r->dot.c_str() : nullptr; }

void gog_report_free(gog_report* r) { delete r; }

void gog_string_free(char* s) { std::free(s); }

const char* gog_last_error(void) { return last_error.c_str(); }

const char* gog_last_error_kind(void) { return last_kind.c_str(); }

const char* gog_version(void) { return "0.1.0"; }
}
