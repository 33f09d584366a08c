#include "document.hpp"

#include <sstream>

namespace gog {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(Errc::parse, "at " + where + ": " + what);
}

// rethrows library errors with the JSON pointer of the entry being read
template <class F>
auto at(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == Errc::parse && std::string(e.what()).rfind("at ", 0) == 0) throw;
        throw Error(e.code() == Errc::parse ? Errc::parse : e.code(), "at " + where + ": " + e.what());
    } catch (const ojson::exception& e) {
        fail(where, e.what());
    }
}

const ojson& need(const ojson& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing '") + key + "'");
    return j.at(key);
}

std::string need_string(const ojson& j, const char* key, const std::string& where) {
    const ojson& v = need(j, key, where);
    if (!v.is_string()) fail(where + "/" + key, "expected a string");
    return v.get<std::string>();
}

GroupPtr parse_group(const ojson& j, const std::string& where) {
    std::string kind = need_string(j, "kind", where);
    if (kind == "trivial") return Group::trivial();
    if (kind == "integers") return Group::integers();
    if (kind == "cyclic") return Group::cyclic(need(j, "n", where).get<Elem>());
    if (kind == "table") {
        auto names = need(j, "elements", where).get<std::vector<std::string>>();
        auto product = need(j, "product", where).get<std::vector<std::vector<int>>>();
        auto inverses = need(j, "inverses", where).get<std::vector<int>>();
        int id = need(j, "identity", where).get<int>();
        return Group::table(std::move(names), std::move(product), std::move(inverses), id);
    }
    fail(where + "/kind", "unknown group kind '" + kind + "'");
}

ojson group_json(const Group& g) {
    ojson j;
    switch (g.kind()) {
        case Group::Kind::trivial: j["kind"] = "trivial"; break;
        case Group::Kind::integers: j["kind"] = "integers"; break;
        case Group::Kind::cyclic:
            j["kind"] = "cyclic";
            j["n"] = g.modulus();
            break;
        case Group::Kind::table:
            j["kind"] = "table";
            j["elements"] = g.names();
            j["product"] = g.product();
            j["inverses"] = g.inverses();
            j["identity"] = g.id();
            break;
    }
    return j;
}

Mono parse_mono(const ojson& j, GroupPtr dom, GroupPtr cod) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "trivial") {
            if (dom->kind() != Group::Kind::trivial) throw Error(Errc::invariant, "trivial map from a nontrivial group is not injective");
            return Mono::trivial(dom, cod);
        }
        if (s == "identity") {
            if (!dom->same(*cod)) throw Error(Errc::owner_mismatch, "identity between different groups");
            return Mono::identity(dom);
        }
        throw Error(Errc::parse, "unknown map '" + s + "'");
    }
    if (j.contains("multiplier")) return Mono::multiplier(dom, cod, j.at("multiplier").get<Elem>());
    if (j.contains("images")) {
        std::vector<Elem> images;
        for (auto& x : j.at("images")) images.push_back(parse_element(*cod, x));
        return Mono::from_images(dom, cod, std::move(images));
    }
    throw Error(Errc::parse, "a map is \"identity\", \"trivial\", {\"multiplier\": k} or {\"images\": [...]}");
}

ojson mono_json(const Mono& m) {
    switch (m.kind()) {
        case Mono::Kind::trivial: return "trivial";
        case Mono::Kind::multiplier: return ojson{{"multiplier", m.factor()}};
        case Mono::Kind::map: {
            ojson imgs = ojson::array();
            for (Elem x : m.images()) imgs.push_back(element_json(*m.cod(), x));
            return ojson{{"images", imgs}};
        }
    }
    return nullptr;
}

std::string find_group_name(const Document& doc, const GroupPtr& g) {
    for (auto& [n, h] : doc.groups.items)
        if (h == g) return n;
    for (auto& [n, h] : doc.groups.items)
        if (h->same(*g)) return n;
    throw Error(Errc::invariant, "group " + g->describe() + " is not registered in the document");
}

GraphPtr parse_graph(const Document& doc, const ojson& j, const std::string& where) {
    auto G = std::make_shared<Graph>();
    const ojson& vs = need(j, "vertices", where);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string w = where + "/vertices/" + std::to_string(i);
        at(w, [&] {
            auto name = need_string(vs[i], "name", w);
            if (G->vertex(name)) fail(w, "duplicate vertex '" + name + "'");
            G->add_vertex(name, doc.groups.at(need_string(vs[i], "group", w), "group"));
        });
    }
    if (j.contains("edges")) {
        const ojson& es = j.at("edges");
        for (std::size_t i = 0; i < es.size(); ++i) {
            std::string w = where + "/edges/" + std::to_string(i);
            at(w, [&] {
                const ojson& e = es[i];
                int o = G->vertex_or_throw(need_string(e, "origin", w));
                int t = G->vertex_or_throw(need_string(e, "target", w));
                GroupPtr eg = doc.groups.at(need_string(e, "group", w), "group");
                Mono al = at(w + "/alpha", [&] { return parse_mono(need(e, "alpha", w), eg, G->vgroup(o)); });
                Mono om = at(w + "/omega", [&] { return parse_mono(need(e, "omega", w), eg, G->vgroup(t)); });
                G->add_edge(need_string(e, "name", w), need_string(e, "inv", w), o, t, eg, al, om);
            });
        }
    }
    if (j.contains("basepoint")) G->basepoint = at(where + "/basepoint", [&] { return G->vertex_or_throw(j.at("basepoint").get<std::string>()); });
    G->validate();
    return G;
}

int edge_or_throw(const Graph& g, const std::string& name) {
    auto e = g.edge(name);
    if (!e) throw Error(Errc::parse, "unknown edge '" + name + "'");
    return *e;
}

Morphism parse_morphism(const Document& doc, const ojson& j, const std::string& where) {
    Morphism m;
    m.source = doc.graphs.at(need_string(j, "source", where), "graph");
    m.target = doc.graphs.at(need_string(j, "target", where), "graph");
    const Graph& B = *m.source;
    const Graph& A = *m.target;
    const ojson& gm = need(j, "graph_map", where);
    m.vmap.assign(B.nv(), -1);
    m.emap.assign(B.ne(), -1);
    for (auto& [k, v] : gm.items()) {
        at(where + "/graph_map/" + k, [&] {
            auto img = v.get<std::string>();
            if (auto x = B.vertex(k)) {
                m.vmap[*x] = A.vertex_or_throw(img);
            } else {
                int f = edge_or_throw(B, k);
                int e = edge_or_throw(A, img);
                m.emap[f] = e;
                m.emap[B.inv(f)] = A.inv(e);
            }
        });
    }
    for (int x = 0; x < B.nv(); ++x)
        if (m.vmap[x] < 0) fail(where + "/graph_map", "vertex '" + B.vname(x) + "' is not mapped");
    for (int f = 0; f < B.ne(); ++f)
        if (m.emap[f] < 0) fail(where + "/graph_map", "edge '" + B.ename(f) + "' is not mapped");
    const ojson* vm = j.contains("vertex_monos") ? &j.at("vertex_monos") : nullptr;
    for (int x = 0; x < B.nv(); ++x) {
        std::string w = where + "/vertex_monos/" + B.vname(x);
        auto dom = B.vgroup(x), cod = A.vgroup(m.vmap[x]);
        m.vmono.push_back(at(w, [&] {
            if (vm && vm->contains(B.vname(x))) return parse_mono(vm->at(B.vname(x)), dom, cod);
            if (dom->kind() == Group::Kind::trivial) return Mono::trivial(dom, cod);
            fail(w, "missing vertex map");
        }));
    }
    const ojson* em = j.contains("edge_monos") ? &j.at("edge_monos") : nullptr;
    for (int f = 0; f < B.ne(); ++f) {
        std::string w = where + "/edge_monos/" + B.ename(f);
        auto dom = B.egroup(f), cod = A.egroup(m.emap[f]);
        m.emono.push_back(at(w, [&] {
            for (int g : {f, B.inv(f)})
                if (em && em->contains(B.ename(g))) return parse_mono(em->at(B.ename(g)), dom, cod);
            if (dom->kind() == Group::Kind::trivial) return Mono::trivial(dom, cod);
            fail(w, "missing edge map");
        }));
    }
    const ojson* tw = j.contains("twists") ? &j.at("twists") : nullptr;
    for (int f = 0; f < B.ne(); ++f) {
        const Group& G = *A.vgroup(A.origin(m.emap[f]));
        if (tw && tw->contains(B.ename(f)))
            m.twist.push_back(at(where + "/twists/" + B.ename(f), [&] { return parse_element(G, tw->at(B.ename(f))); }));
        else
            m.twist.push_back(G.id());
    }
    at(where, [&] { m.validate(); });
    return m;
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

ojson element_json(const Group& g, Elem a) {
    if (g.kind() == Group::Kind::table) return g.format(a);
    return a;
}

Elem parse_element(const Group& g, const ojson& j) {
    Elem a;
    if (j.is_string()) {
        auto s = j.get<std::string>();
        auto x = g.lookup(s);
        if (!x) throw Error(Errc::parse, "'" + s + "' is not an element of " + g.describe());
        a = *x;
    } else if (j.is_number_integer()) {
        a = j.get<Elem>();
        if (g.kind() == Group::Kind::cyclic) a = floor_mod(a, g.modulus());
    } else {
        throw Error(Errc::parse, "group elements are integers or element names");
    }
    if (!g.contains(a)) throw Error(Errc::owner_mismatch, g.format(a) + " is not an element of " + g.describe());
    return a;
}

ojson path_json(const Graph& g, const Path& p) {
    ojson items = ojson::array();
    int cur = p.start;
    items.push_back(element_json(*g.vgroup(cur), p.elems[0]));
    for (int i = 0; i < p.length(); ++i) {
        int e = p.edges[i];
        cur = g.target(e);
        items.push_back(g.ename(e));
        items.push_back(element_json(*g.vgroup(cur), p.elems[i + 1]));
    }
    return ojson{{"start", g.vname(p.start)}, {"items", items}};
}

Path parse_path(const Graph& g, const ojson& j) {
    const ojson& items = j.at("items");
    if (!items.is_array() || items.size() % 2 == 0) throw Error(Errc::parse, "path items alternate elements and edges, starting and ending with an element");
    Path p;
    if (j.contains("start"))
        p.start = g.vertex_or_throw(j.at("start").get<std::string>());
    else if (items.size() > 1)
        p.start = g.origin(edge_or_throw(g, items[1].get<std::string>()));
    else
        throw Error(Errc::parse, "a path without edges needs 'start'");
    p.elems.clear();
    int cur = p.start;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i % 2 == 1) {
            int e = edge_or_throw(g, items[i].get<std::string>());
            if (g.origin(e) != cur) throw Error(Errc::adjacency, "edge '" + g.ename(e) + "' does not start at '" + g.vname(cur) + "'");
            p.edges.push_back(e);
            cur = g.target(e);
        } else {
            p.elems.push_back(parse_element(*g.vgroup(cur), items[i]));
        }
    }
    check_path(g, p);
    return p;
}

std::string Document::group_name(const GroupPtr& g) {
    for (auto& [n, h] : groups.items)
        if (h == g || h->same(*g)) return n;
    std::string base = g->describe(), name = base;
    for (int k = 2; groups.find(name); ++k) name = base + "_" + std::to_string(k);
    groups.put(name, g);
    return name;
}

std::string Document::graph_name(const GraphPtr& g) const {
    for (auto& [n, h] : graphs.items)
        if (h == g) return n;
    throw Error(Errc::invariant, "graph is not registered in the document");
}

void Document::add_graph(const std::string& name, GraphPtr g) {
    for (int v = 0; v < g->nv(); ++v) group_name(g->vgroup(v));
    for (int e = 0; e < g->ne(); ++e) group_name(g->egroup(e));
    graphs.put(name, std::move(g));
}

Document parse_document(const std::string& text) {
    Document doc;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return doc;
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        auto [line, col] = line_col(text, e.byte);
        throw Error(Errc::parse, std::to_string(line) + ":" + std::to_string(col) + ": syntax error: " + e.what());
    }
    if (!j.is_object()) fail("/", "a document is a JSON object");
    for (auto& [k, _] : j.items())
        if (k != "groups" && k != "graphs" && k != "morphisms" && k != "paths" && k != "schema")
            fail("/" + k, "unknown section");
    if (j.contains("groups"))
        for (auto& [name, g] : j.at("groups").items())
            doc.groups.put(name, at("/groups/" + name, [&] { return parse_group(g, "/groups/" + name); }));
    if (j.contains("graphs"))
        for (auto& [name, g] : j.at("graphs").items())
            doc.graphs.put(name, at("/graphs/" + name, [&] { return parse_graph(doc, g, "/graphs/" + name); }));
    if (j.contains("morphisms"))
        for (auto& [name, m] : j.at("morphisms").items())
            doc.morphisms.put(name, at("/morphisms/" + name, [&] { return parse_morphism(doc, m, "/morphisms/" + name); }));
    if (j.contains("paths"))
        for (auto& [name, p] : j.at("paths").items()) {
            std::string w = "/paths/" + name;
            doc.paths.put(name, at(w, [&] {
                std::string gname = need_string(p, "graph", w);
                return NamedPath{gname, parse_path(*doc.graphs.at(gname, "graph"), p)};
            }));
        }
    return doc;
}

std::string emit_document(const Document& doc) {
    ojson j;
    j["groups"] = ojson::object();
    for (auto& [n, g] : doc.groups.items) j["groups"][n] = group_json(*g);
    j["graphs"] = ojson::object();
    for (auto& [n, g] : doc.graphs.items) {
        ojson gj;
        gj["vertices"] = ojson::array();
        for (int v = 0; v < g->nv(); ++v)
            gj["vertices"].push_back({{"name", g->vname(v)}, {"group", find_group_name(doc, g->vgroup(v))}});
        gj["edges"] = ojson::array();
        for (int e = 0; e < g->ne(); e += 2)
            gj["edges"].push_back({{"name", g->ename(e)},
                                   {"inv", g->ename(g->inv(e))},
                                   {"origin", g->vname(g->origin(e))},
                                   {"target", g->vname(g->target(e))},
                                   {"group", find_group_name(doc, g->egroup(e))},
                                   {"alpha", mono_json(g->alpha(e))},
                                   {"omega", mono_json(g->omega(e))}});
        if (g->basepoint) gj["basepoint"] = g->vname(*g->basepoint);
        j["graphs"][n] = gj;
    }
    j["morphisms"] = ojson::object();
    for (auto& [n, m] : doc.morphisms.items) {
        const Graph& B = *m.source;
        const Graph& A = *m.target;
        ojson mj;
        mj["source"] = doc.graph_name(m.source);
        mj["target"] = doc.graph_name(m.target);
        ojson gm, vm, em, tw;
        for (int x = 0; x < B.nv(); ++x) gm[B.vname(x)] = A.vname(m.v(x));
        for (int f = 0; f < B.ne(); ++f) gm[B.ename(f)] = A.ename(m.e(f));
        for (int x = 0; x < B.nv(); ++x) vm[B.vname(x)] = mono_json(m.vmono[x]);
        for (int f = 0; f < B.ne(); ++f) em[B.ename(f)] = mono_json(m.emono[f]);
        for (int f = 0; f < B.ne(); ++f) tw[B.ename(f)] = element_json(*A.vgroup(A.origin(m.e(f))), m.twist[f]);
        mj["graph_map"] = gm;
        mj["vertex_monos"] = vm.is_null() ? ojson::object() : vm;
        mj["edge_monos"] = em.is_null() ? ojson::object() : em;
        mj["twists"] = tw.is_null() ? ojson::object() : tw;
        j["morphisms"][n] = mj;
    }
    j["paths"] = ojson::object();
    for (auto& [n, p] : doc.paths.items) {
        ojson pj{{"graph", p.graph}};
        pj.update(path_json(*doc.graphs.at(p.graph, "graph"), p.path));
        j["paths"][n] = pj;
    }
    return j.dump(2) + "\n";
}

namespace {
std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}
}  // namespace

std::string to_dot(const Graph& g, const std::string& title, const Morphism* over) {
    std::ostringstream os;
    os << "digraph " << quote(title) << " {\n";
    for (int v = 0; v < g.nv(); ++v) {
        os << "  n" << v << " [label=" << quote(g.vname(v) + "|" + g.vgroup(v)->describe());
        if (g.basepoint && *g.basepoint == v) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (int e = 0; e < g.ne(); e += 2) {
        std::string label = g.ename(e);
        if (over) {
            const Group& G = *over->target->vgroup(over->target->origin(over->e(e)));
            const Group& H = *over->target->vgroup(over->target->origin(over->e(g.inv(e))));
            label += "|" + G.format(over->alpha_twist(e)) + "|" + H.format(over->omega_twist(e));
        }
        os << "  n" << g.origin(e) << " -> n" << g.target(e) << " [label=" << quote(label) << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace gog
