#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "morphism.hpp"

namespace gog {

using ojson = nlohmann::ordered_json;

template <class T>
struct Named {
    std::vector<std::pair<std::string, T>> items;

    const T* find(const std::string& name) const {
        for (auto& [n, t] : items)
            if (n == name) return &t;
        return nullptr;
    }
    const T& at(const std::string& name, const char* what) const {
        if (auto* t = find(name)) return *t;
        throw Error(Errc::parse, std::string("unknown ") + what + " '" + name + "'");
    }
    void put(const std::string& name, T t) {
        for (auto& [n, old] : items)
            if (n == name) {
                old = std::move(t);
                return;
            }
        items.emplace_back(name, std::move(t));
    }
};

struct NamedPath {
    std::string graph;
    Path path;
};

struct Document {
    Named<GroupPtr> groups;
    Named<GraphPtr> graphs;
    Named<Morphism> morphisms;
    Named<NamedPath> paths;

    // registered name of a group, adding it under a generated name when missing
    std::string group_name(const GroupPtr& g);
    std::string graph_name(const GraphPtr& g) const;
    void add_graph(const std::string& name, GraphPtr g);
};

// syntax errors carry line:column; semantic errors carry the JSON pointer of the offending entry
Document parse_document(const std::string& text);
std::string emit_document(const Document& doc);

ojson element_json(const Group& g, Elem a);
Elem parse_element(const Group& g, const ojson& j);
ojson path_json(const Graph& g, const Path& p);
Path parse_path(const Graph& g, const ojson& j);

// vertices "name|group", edges "name|alpha-twist|omega-twist" when a morphism out of g is given
std::string to_dot(const Graph& g, const std::string& title, const Morphism* over = nullptr);

}  // namespace gog
