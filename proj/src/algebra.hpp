#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gog {

using Elem = std::int64_t;

enum class Errc {
    owner_mismatch = 10,
    adjacency,
    not_a_circuit,
    not_cyclically_reduced,
    unknown_vertex,
    composability,
    invalid_certificate,
    window_exceeded,
    invalid_centralizer_element,
    empty_window,
    not_a_covering,
    unsupported,
    invariant,
    parse,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

const char* errc_name(Errc c);

// integer helpers
Elem floor_mod(Elem a, Elem m);
Elem gcd(Elem a, Elem b);
Elem lcm(Elem a, Elem b);
// returns g = gcd(a,b) >= 0 and x,y with a*x + b*y = g
Elem ext_gcd(Elem a, Elem b, Elem& x, Elem& y);

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Group {
public:
    enum class Kind { trivial, integers, cyclic, table };

    static GroupPtr trivial();
    static GroupPtr integers();
    static GroupPtr cyclic(Elem n);
    // product[a][b] = index of a*b; validated by full enumeration
    static GroupPtr table(std::vector<std::string> names, std::vector<std::vector<int>> product,
                          std::vector<int> inverses, int identity);

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ != Kind::integers; }
    // 0 for the infinite group
    Elem order() const;
    Elem modulus() const { return n_; }

    Elem id() const { return kind_ == Kind::table ? identity_ : 0; }
    Elem op(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    // a^g = g^-1 a g
    Elem conj(Elem a, Elem g) const { return op(op(inv(g), a), g); }
    bool is_id(Elem a) const { return a == id(); }
    bool contains(Elem a) const;
    bool abelian() const { return abelian_; }

    std::vector<Elem> elements() const;
    std::vector<Elem> generators() const;

    std::string format(Elem a) const;
    std::optional<Elem> lookup(const std::string& name) const;
    std::string describe() const;

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::vector<int>>& product() const { return product_; }
    const std::vector<int>& inverses() const { return inverses_; }

    bool same(const Group& other) const;

private:
    Group() = default;
    Kind kind_ = Kind::trivial;
    Elem n_ = 1;
    std::vector<std::string> names_;
    std::vector<std::vector<int>> product_;
    std::vector<int> inverses_;
    int identity_ = 0;
    bool abelian_ = true;
    std::unordered_map<std::string, int> index_;
    std::vector<Elem> gens_;
};

class Mono {
public:
    enum class Kind { trivial, multiplier, map };

    Mono() = default;
    static Mono identity(GroupPtr g);
    static Mono trivial(GroupPtr dom, GroupPtr cod);
    static Mono multiplier(GroupPtr dom, GroupPtr cod, Elem k);
    static Mono from_images(GroupPtr dom, GroupPtr cod, std::vector<Elem> images);
    // builds the homomorphism determined by f; f is only sampled on what determines it
    static Mono from_function(GroupPtr dom, GroupPtr cod, const std::function<Elem(Elem)>& f);

    const GroupPtr& dom() const { return dom_; }
    const GroupPtr& cod() const { return cod_; }
    Kind kind() const { return kind_; }
    Elem factor() const { return k_; }
    const std::vector<Elem>& images() const { return images_; }

    Elem apply(Elem a) const;
    std::optional<Elem> preimage(Elem a) const;
    bool in_image(Elem a) const { return preimage(a).has_value(); }

    // other o this
    Mono then(const Mono& other) const;
    // x -> g^-1 f(x) g, i.e. gamma_g o this
    Mono conjugated(Elem g) const;

    bool equals(const Mono& other) const;
    bool surjective() const;
    std::vector<Elem> image_elements() const;
    // for cyclic or integer codomain: the non-negative generator of the image (mod n for cyclic)
    Elem lattice() const;

private:
    GroupPtr dom_, cod_;
    Kind kind_ = Kind::trivial;
    Elem k_ = 0;
    std::vector<Elem> images_;
    std::unordered_map<Elem, Elem> pre_;
    void index();
};

// H\G/K where H, K are images of monomorphisms into G
class DoubleCosets {
public:
    DoubleCosets(GroupPtr g, Mono left, Mono right);

    const GroupPtr& group() const { return g_; }
    const Mono& left() const { return left_; }
    const Mono& right() const { return right_; }
    bool finite() const { return finite_; }

    Elem canonical(Elem a) const;
    bool same(Elem a, Elem b) const { return canonical(a) == canonical(b); }
    // canonical representatives; for infinite spaces only those with |value| <= window
    std::vector<Elem> representatives(Elem window) const;
    // (h, k) with target = left(h) * middle * right(k)
    std::optional<std::pair<Elem, Elem>> factor(Elem middle, Elem target) const;

private:
    GroupPtr g_;
    Mono left_, right_;
    bool finite_ = true;
    Elem lattice_ = 0;
    std::vector<Elem> hs_, ks_;
};

// index of a subgroup image in G, 0 when infinite
Elem subgroup_index(const Mono& m);
// canonical representatives of the left cosets G / m(dom); window bounds infinite cases
std::vector<Elem> left_coset_reps(const Mono& m, Elem window, bool* truncated = nullptr);
Elem left_coset_canonical(const Mono& m, Elem a);

// {(b, c) : xt^-1 muB(b) xt = muC(c)}, with its two coordinate projections
struct TwistedPullback {
    GroupPtr group;
    Mono to_left;
    Mono to_right;
};
TwistedPullback twisted_pullback(const Mono& muB, const Mono& muC, Elem xt);

}  // namespace gog
