#include "algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace gog {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::owner_mismatch: return "OwnerMismatch";
        case Errc::adjacency: return "Adjacency";
        case Errc::not_a_circuit: return "NotACircuit";
        case Errc::not_cyclically_reduced: return "InputNotCyclicallyReduced";
        case Errc::unknown_vertex: return "UnknownVertex";
        case Errc::composability: return "Composability";
        case Errc::invalid_certificate: return "InvalidCertificate";
        case Errc::window_exceeded: return "WindowExceeded";
        case Errc::invalid_centralizer_element: return "InvalidCentralizerElement";
        case Errc::empty_window: return "EmptyWindow";
        case Errc::not_a_covering: return "NotACovering";
        case Errc::unsupported: return "Unsupported";
        case Errc::invariant: return "InvariantViolation";
        case Errc::parse: return "ParseError";
    }
    return "Error";
}

Elem floor_mod(Elem a, Elem m) {
    if (m == 0) return a;
    if (m < 0) m = -m;
    Elem r = a % m;
    return r < 0 ? r + m : r;
}

Elem gcd(Elem a, Elem b) { return std::gcd(a, b); }

Elem lcm(Elem a, Elem b) {
    if (a == 0 || b == 0) return 0;
    return std::lcm(a, b);
}

Elem ext_gcd(Elem a, Elem b, Elem& x, Elem& y) {
    Elem old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Elem q = old_r / r;
        Elem tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

namespace {

Elem modinv(Elem a, Elem m) {
    Elem x, y;
    Elem g = ext_gcd(floor_mod(a, m), m, x, y);
    if (g != 1) throw Error(Errc::invariant, "no modular inverse");
    return floor_mod(x, m);
}

[[noreturn]] void invariant(const std::string& msg) { throw Error(Errc::invariant, msg); }

}  // namespace

GroupPtr Group::trivial() {
    static const GroupPtr g = [] {
        auto p = std::shared_ptr<Group>(new Group());
        p->kind_ = Kind::trivial;
        p->n_ = 1;
        return p;
    }();
    return g;
}

GroupPtr Group::integers() {
    static const GroupPtr g = [] {
        auto p = std::shared_ptr<Group>(new Group());
        p->kind_ = Kind::integers;
        p->n_ = 0;
        p->gens_ = {1};
        return p;
    }();
    return g;
}

GroupPtr Group::cyclic(Elem n) {
    if (n < 1) invariant("cyclic group order must be positive");
    if (n == 1) return trivial();
    auto p = std::shared_ptr<Group>(new Group());
    p->kind_ = Kind::cyclic;
    p->n_ = n;
    p->gens_ = {1};
    return p;
}

GroupPtr Group::table(std::vector<std::string> names, std::vector<std::vector<int>> product,
                      std::vector<int> inverses, int identity) {
    const int n = static_cast<int>(names.size());
    if (n == 0) invariant("table group needs at least one element");
    if (static_cast<int>(product.size()) != n) invariant("product table has wrong number of rows");
    for (auto& row : product) {
        if (static_cast<int>(row.size()) != n) invariant("product table row has wrong length");
        for (int x : row)
            if (x < 0 || x >= n) invariant("product table entry out of range");
    }
    if (identity < 0 || identity >= n) invariant("identity index out of range");
    for (int a = 0; a < n; ++a)
        if (product[identity][a] != a || product[a][identity] != a) invariant("identity law fails");
    if (inverses.empty()) {
        inverses.assign(n, -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (product[a][b] == identity) inverses[a] = b;
    }
    if (static_cast<int>(inverses.size()) != n) invariant("inverse list has wrong length");
    for (int a = 0; a < n; ++a) {
        int b = inverses[a];
        if (b < 0 || b >= n || product[a][b] != identity || product[b][a] != identity)
            invariant("inverse law fails for element " + names[a]);
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (product[product[a][b]][c] != product[a][product[b][c]]) invariant("product is not associative");
    if (n == 1) return trivial();

    auto p = std::shared_ptr<Group>(new Group());
    p->kind_ = Kind::table;
    p->n_ = n;
    p->identity_ = identity;
    for (int a = 0; a < n; ++a) {
        if (!p->index_.emplace(names[a], a).second) invariant("duplicate element name " + names[a]);
        for (int b = 0; b < n; ++b)
            if (product[a][b] != product[b][a]) p->abelian_ = false;
    }
    p->names_ = std::move(names);
    p->product_ = std::move(product);
    p->inverses_ = std::move(inverses);

    std::vector<char> in(n, 0);
    in[identity] = 1;
    int covered = 1;
    for (int g = 0; g < n && covered < n; ++g) {
        if (in[g]) continue;
        p->gens_.push_back(g);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<int> now;
            for (int a = 0; a < n; ++a)
                if (in[a]) now.push_back(a);
            for (int a : now)
                for (int s : p->gens_) {
                    int c = p->product_[a][s];
                    if (!in[c]) {
                        in[c] = 1;
                        ++covered;
                        grew = true;
                    }
                }
        }
    }
    return p;
}

Elem Group::order() const { return kind_ == Kind::integers ? 0 : n_; }

Elem Group::op(Elem a, Elem b) const {
    switch (kind_) {
        case Kind::trivial: return 0;
        case Kind::integers: return a + b;
        case Kind::cyclic: return (a + b) % n_;
        case Kind::table: return product_[a][b];
    }
    return 0;
}

Elem Group::inv(Elem a) const {
    switch (kind_) {
        case Kind::trivial: return 0;
        case Kind::integers: return -a;
        case Kind::cyclic: return a == 0 ? 0 : n_ - a;
        case Kind::table: return inverses_[a];
    }
    return 0;
}

bool Group::contains(Elem a) const {
    switch (kind_) {
        case Kind::trivial: return a == 0;
        case Kind::integers: return true;
        case Kind::cyclic:
        case Kind::table: return a >= 0 && a < n_;
    }
    return false;
}

std::vector<Elem> Group::elements() const {
    if (kind_ == Kind::integers) throw Error(Errc::unsupported, "cannot enumerate an infinite group");
    std::vector<Elem> out(n_);
    std::iota(out.begin(), out.end(), Elem{0});
    return out;
}

std::vector<Elem> Group::generators() const { return gens_; }

std::string Group::format(Elem a) const {
    if (kind_ == Kind::table) return names_.at(a);
    return std::to_string(a);
}

std::optional<Elem> Group::lookup(const std::string& name) const {
    if (kind_ != Kind::table) return std::nullopt;
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string Group::describe() const {
    switch (kind_) {
        case Kind::trivial: return "1";
        case Kind::integers: return "Z";
        case Kind::cyclic: return "Z/" + std::to_string(n_);
        case Kind::table: return "T" + std::to_string(n_);
    }
    return "?";
}

bool Group::same(const Group& o) const {
    if (this == &o) return true;
    if (kind_ != o.kind_ || n_ != o.n_) return false;
    if (kind_ == Kind::table)
        return identity_ == o.identity_ && product_ == o.product_ && names_ == o.names_;
    return true;
}

namespace {
void check_owner(const GroupPtr& g, Elem a, const char* what) {
    if (!g->contains(a)) throw Error(Errc::owner_mismatch, std::string(what) + ": element not in group");
}
}  // namespace

Mono Mono::identity(GroupPtr g) {
    if (g->kind() == Group::Kind::trivial) return trivial(g, g);
    if (g->kind() == Group::Kind::table) return from_images(g, g, g->elements());
    return multiplier(g, g, 1);
}

Mono Mono::trivial(GroupPtr dom, GroupPtr cod) {
    if (dom->kind() != Group::Kind::trivial) invariant("trivial embedding needs a trivial domain");
    Mono m;
    m.dom_ = std::move(dom);
    m.cod_ = std::move(cod);
    m.kind_ = Kind::trivial;
    return m;
}

Mono Mono::multiplier(GroupPtr dom, GroupPtr cod, Elem k) {
    using K = Group::Kind;
    if (dom->kind() == K::trivial) return trivial(dom, cod);
    Mono m;
    m.dom_ = dom;
    m.cod_ = cod;
    m.kind_ = Kind::multiplier;
    if (dom->kind() == K::integers && cod->kind() == K::integers) {
        if (k == 0) invariant("multiplier 0 is not injective");
        m.k_ = k;
        return m;
    }
    if (dom->kind() == K::cyclic && cod->kind() == K::cyclic) {
        Elem n = dom->order(), M = cod->order();
        k = floor_mod(k, M);
        if ((k * n) % M != 0) invariant("multiplier does not define a homomorphism Z/" + std::to_string(n) + " -> Z/" + std::to_string(M));
        if (M / gcd(k, M) != n) invariant("multiplier is not injective");
        m.k_ = k;
        return m;
    }
    invariant("no injective homomorphism from " + dom->describe() + " to " + cod->describe());
}

Mono Mono::from_images(GroupPtr dom, GroupPtr cod, std::vector<Elem> images) {
    if (dom->kind() == Group::Kind::trivial) {
        if (!images.empty() && images.size() != 1) invariant("element map has wrong size");
        if (!images.empty() && images[0] != cod->id()) invariant("identity must map to identity");
        return trivial(dom, cod);
    }
    if (!dom->finite()) invariant("element maps need a finite domain");
    const Elem n = dom->order();
    if (static_cast<Elem>(images.size()) != n) invariant("element map has wrong size");
    for (Elem x : images)
        if (!cod->contains(x)) invariant("element map leaves the codomain");
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            if (images[dom->op(a, b)] != cod->op(images[a], images[b])) invariant("element map is not a homomorphism");
    {
        std::set<Elem> seen(images.begin(), images.end());
        if (static_cast<Elem>(seen.size()) != n) invariant("element map is not injective");
    }
    Mono m;
    m.dom_ = std::move(dom);
    m.cod_ = std::move(cod);
    m.kind_ = Kind::map;
    m.images_ = std::move(images);
    m.index();
    return m;
}

Mono Mono::from_function(GroupPtr dom, GroupPtr cod, const std::function<Elem(Elem)>& f) {
    using K = Group::Kind;
    if (dom->kind() == K::trivial) return trivial(dom, cod);
    if (dom->kind() == K::integers) {
        if (cod->kind() != K::integers) invariant("no injective homomorphism from Z into a finite group");
        return multiplier(dom, cod, f(1));
    }
    if (dom->kind() == K::cyclic && cod->kind() == K::cyclic) return multiplier(dom, cod, f(1));
    std::vector<Elem> images;
    for (Elem a : dom->elements()) images.push_back(f(a));
    return from_images(dom, cod, images);
}

void Mono::index() {
    pre_.clear();
    for (Elem a = 0; a < static_cast<Elem>(images_.size()); ++a) pre_[images_[a]] = a;
}

Elem Mono::apply(Elem a) const {
    check_owner(dom_, a, "mono_apply");
    switch (kind_) {
        case Kind::trivial: return cod_->id();
        case Kind::multiplier:
            if (cod_->kind() == Group::Kind::integers) return k_ * a;
            return floor_mod(k_ * a, cod_->order());
        case Kind::map: return images_[a];
    }
    return 0;
}

std::optional<Elem> Mono::preimage(Elem a) const {
    check_owner(cod_, a, "mono_preimage");
    switch (kind_) {
        case Kind::trivial:
            if (a == cod_->id()) return dom_->id();
            return std::nullopt;
        case Kind::multiplier: {
            if (cod_->kind() == Group::Kind::integers) {
                if (a % k_ != 0) return std::nullopt;
                return a / k_;
            }
            Elem M = cod_->order();
            Elem g = gcd(k_, M);
            if (a % g != 0) return std::nullopt;
            Elem n = M / g;
            if (n == 1) return 0;
            return floor_mod((a / g) * modinv(k_ / g, n), n);
        }
        case Kind::map: {
            auto it = pre_.find(a);
            if (it == pre_.end()) return std::nullopt;
            return it->second;
        }
    }
    return std::nullopt;
}

Mono Mono::then(const Mono& other) const {
    if (!cod_->same(*other.dom_)) throw Error(Errc::composability, "monomorphisms are not composable");
    return from_function(dom_, other.cod_, [&](Elem x) { return other.apply(apply(x)); });
}

Mono Mono::conjugated(Elem g) const {
    check_owner(cod_, g, "conjugating element");
    return from_function(dom_, cod_, [&](Elem x) { return cod_->conj(apply(x), g); });
}

bool Mono::equals(const Mono& o) const {
    if (!dom_->same(*o.dom_) || !cod_->same(*o.cod_)) return false;
    for (Elem g : dom_->generators())
        if (apply(g) != o.apply(g)) return false;
    return true;
}

bool Mono::surjective() const {
    if (!cod_->finite()) return dom_->kind() == Group::Kind::integers && (k_ == 1 || k_ == -1);
    return dom_->order() == cod_->order();
}

std::vector<Elem> Mono::image_elements() const {
    std::vector<Elem> out;
    for (Elem a : dom_->elements()) out.push_back(apply(a));
    return out;
}

Elem Mono::lattice() const {
    if (cod_->kind() == Group::Kind::integers) return kind_ == Kind::trivial ? 0 : (k_ < 0 ? -k_ : k_);
    if (cod_->kind() == Group::Kind::cyclic) {
        Elem M = cod_->order();
        Elem g = M;
        if (kind_ != Kind::trivial)
            for (Elem s : dom_->generators()) g = gcd(g, apply(s));
        return g;
    }
    throw Error(Errc::unsupported, "lattice of a non-cyclic codomain");
}

DoubleCosets::DoubleCosets(GroupPtr g, Mono left, Mono right)
    : g_(std::move(g)), left_(std::move(left)), right_(std::move(right)) {
    if (!left_.cod()->same(*g_) || !right_.cod()->same(*g_))
        throw Error(Errc::owner_mismatch, "double coset subgroups live in another group");
    switch (g_->kind()) {
        case Group::Kind::trivial: finite_ = true; break;
        case Group::Kind::integers:
            lattice_ = gcd(left_.lattice(), right_.lattice());
            finite_ = lattice_ != 0;
            break;
        case Group::Kind::cyclic:
            lattice_ = gcd(gcd(left_.lattice(), right_.lattice()), g_->order());
            finite_ = true;
            break;
        case Group::Kind::table:
            hs_ = left_.image_elements();
            ks_ = right_.image_elements();
            finite_ = true;
            break;
    }
}

Elem DoubleCosets::canonical(Elem a) const {
    check_owner(g_, a, "canonical_rep");
    switch (g_->kind()) {
        case Group::Kind::trivial: return 0;
        case Group::Kind::integers: return lattice_ == 0 ? a : floor_mod(a, lattice_);
        case Group::Kind::cyclic: return floor_mod(a, lattice_);
        case Group::Kind::table: {
            Elem best = -1;
            for (Elem h : hs_)
                for (Elem k : ks_) {
                    Elem x = g_->op(g_->op(h, a), k);
                    if (x == g_->id()) return x;
                    if (best < 0 || x < best) best = x;
                }
            return best;
        }
    }
    return a;
}

std::vector<Elem> DoubleCosets::representatives(Elem window) const {
    std::vector<Elem> out;
    if (g_->kind() == Group::Kind::integers) {
        if (lattice_ != 0) {
            for (Elem i = 0; i < lattice_; ++i) out.push_back(i);
        } else {
            out.push_back(0);
            for (Elem i = 1; i <= window; ++i) {
                out.push_back(i);
                out.push_back(-i);
            }
        }
        return out;
    }
    std::set<Elem> reps;
    for (Elem a : g_->elements()) reps.insert(canonical(a));
    if (reps.count(g_->id())) out.push_back(g_->id());
    for (Elem r : reps)
        if (r != g_->id()) out.push_back(r);
    return out;
}

std::optional<std::pair<Elem, Elem>> DoubleCosets::factor(Elem middle, Elem target) const {
    const Group& G = *g_;
    if (G.kind() == Group::Kind::trivial) return std::make_pair(left_.dom()->id(), right_.dom()->id());
    if (G.kind() == Group::Kind::integers) {
        Elem kl = left_.kind() == Mono::Kind::trivial ? 0 : left_.factor();
        Elem kr = right_.kind() == Mono::Kind::trivial ? 0 : right_.factor();
        Elem d = target - middle;
        if (kl == 0 && kr == 0) {
            if (d != 0) return std::nullopt;
            return std::make_pair(Elem{0}, Elem{0});
        }
        Elem x, y;
        Elem g = ext_gcd(kl, kr, x, y);
        if (d % g != 0) return std::nullopt;
        Elem h = x * (d / g), k = y * (d / g);
        // keep the left factor small
        if (kl != 0 && kr != 0) {
            Elem step = kr / g;
            Elem h2 = floor_mod(h, step);
            k += ((h - h2) / step) * (kl / g);
            h = h2;
        }
        return std::make_pair(h, k);
    }
    const Group& H = *left_.dom();
    for (Elem h : H.elements()) {
        Elem r = G.op(G.op(G.inv(middle), G.inv(left_.apply(h))), target);
        if (auto k = right_.preimage(r)) return std::make_pair(h, *k);
    }
    return std::nullopt;
}

Elem subgroup_index(const Mono& m) {
    const Group& G = *m.cod();
    if (G.finite()) return G.order() / m.dom()->order();
    return m.kind() == Mono::Kind::trivial ? 0 : m.lattice();
}

Elem left_coset_canonical(const Mono& m, Elem a) {
    const Group& G = *m.cod();
    switch (G.kind()) {
        case Group::Kind::trivial: return 0;
        case Group::Kind::integers: return m.kind() == Mono::Kind::trivial ? a : floor_mod(a, m.lattice());
        case Group::Kind::cyclic: return floor_mod(a, m.lattice());
        case Group::Kind::table: {
            Elem best = -1;
            for (Elem h : m.image_elements()) {
                Elem x = G.op(a, h);
                if (x == G.id()) return x;
                if (best < 0 || x < best) best = x;
            }
            return best;
        }
    }
    return a;
}

std::vector<Elem> left_coset_reps(const Mono& m, Elem window, bool* truncated) {
    const Group& G = *m.cod();
    std::vector<Elem> out;
    if (truncated) *truncated = false;
    if (G.kind() == Group::Kind::integers) {
        if (m.kind() != Mono::Kind::trivial) {
            for (Elem i = 0; i < m.lattice(); ++i) out.push_back(i);
        } else {
            out.push_back(0);
            for (Elem i = 1; i <= window; ++i) {
                out.push_back(i);
                out.push_back(-i);
            }
            if (truncated) *truncated = true;
        }
        return out;
    }
    std::set<Elem> reps;
    for (Elem a : G.elements()) reps.insert(left_coset_canonical(m, a));
    if (reps.count(G.id())) out.push_back(G.id());
    for (Elem r : reps)
        if (r != G.id()) out.push_back(r);
    return out;
}

TwistedPullback twisted_pullback(const Mono& muB, const Mono& muC, Elem xt) {
    const GroupPtr& A = muB.cod();
    const GroupPtr& B = muB.dom();
    const GroupPtr& C = muC.dom();
    if (!A->same(*muC.cod())) throw Error(Errc::owner_mismatch, "pullback of maps into different groups");
    auto triv = Group::trivial();
    if (B->kind() == Group::Kind::trivial || C->kind() == Group::Kind::trivial)
        return {triv, Mono::trivial(triv, B), Mono::trivial(triv, C)};
    if (A->kind() == Group::Kind::integers) {
        Elem kb = muB.factor(), kc = muC.factor();
        Elem g = gcd(kb, kc);
        auto Z = Group::integers();
        return {Z, Mono::multiplier(Z, B, kc / g), Mono::multiplier(Z, C, kb / g)};
    }
    std::vector<Elem> bs, cs;
    for (Elem b : B->elements()) {
        Elem y = A->conj(muB.apply(b), xt);
        if (auto c = muC.preimage(y)) {
            bs.push_back(b);
            cs.push_back(*c);
        }
    }
    if (bs.size() == 1) return {triv, Mono::trivial(triv, B), Mono::trivial(triv, C)};
    const Elem L = static_cast<Elem>(bs.size());
    if (B->kind() == Group::Kind::cyclic) {
        auto D = Group::cyclic(L);
        Elem step = B->order() / L;
        auto toB = Mono::multiplier(D, B, step);
        auto toC = Mono::from_function(D, C, [&](Elem t) { return *muC.preimage(A->conj(muB.apply(toB.apply(t)), xt)); });
        return {D, toB, toC};
    }
    std::map<Elem, int> pos;
    for (int i = 0; i < static_cast<int>(bs.size()); ++i) pos[bs[i]] = i;
    std::vector<std::string> names;
    std::vector<std::vector<int>> prod(L, std::vector<int>(L));
    std::vector<int> invs(L);
    int ident = pos.at(B->id());
    for (int i = 0; i < L; ++i) {
        names.push_back("(" + B->format(bs[i]) + "," + C->format(cs[i]) + ")");
        invs[i] = pos.at(B->inv(bs[i]));
        for (int j = 0; j < L; ++j) prod[i][j] = pos.at(B->op(bs[i], bs[j]));
    }
    auto D = Group::table(names, prod, invs, ident);
    return {D, Mono::from_images(D, B, bs), Mono::from_images(D, C, cs)};
}

}  // namespace gog
