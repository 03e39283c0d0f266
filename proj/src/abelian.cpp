#include "csp/abelian.hpp"

#include <algorithm>
#include <sstream>

#include "csp/errors.hpp"

namespace csp::zlinalg {

namespace {

Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int pos_mod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

} // namespace

AbelianGroup AbelianGroup::from_relations(std::size_t ngens, const IntMatrix& rels_in) {
    IntMatrix rels = rels_in;
    if (rels.rows() == 0) rels = IntMatrix(0, ngens);
    if (rels.cols() != ngens) throw InternalError("from_relations: shape mismatch");
    SnfResult sr = snf(rels);

    AbelianGroup g;
    g.ngens_ = ngens;
    g.to_canon_ = sr.v;
    g.from_canon_ = invert_unimodular(sr.v);
    std::size_t q = sr.divisors.size();
    for (std::size_t k = 0; k < q; ++k) {
        if (sr.divisors[k] >= 2) {
            g.torsion_.push_back(sr.divisors[k]);
            g.kept_.push_back(k);
        }
    }
    for (std::size_t k = q; k < ngens; ++k) g.kept_.push_back(k);
    g.rank_ = ngens - q;
    return g;
}

AbelianGroup AbelianGroup::free_group(std::size_t rank) {
    return from_relations(rank, IntMatrix(0, rank));
}

AbelianGroup AbelianGroup::direct_sum(const std::vector<Int>& moduli) {
    std::vector<std::vector<Int>> rows;
    for (std::size_t k = 0; k < moduli.size(); ++k) {
        if (moduli[k] == 0) continue;
        std::vector<Int> r(moduli.size(), Int(0));
        r[k] = moduli[k];
        rows.push_back(std::move(r));
    }
    IntMatrix rels = rows.empty() ? IntMatrix(0, moduli.size()) : IntMatrix::from_rows(rows);
    return from_relations(moduli.size(), rels);
}

AbelianGroup::Elem AbelianGroup::encode(const std::vector<Int>& user) const {
    if (user.size() != ngens_) throw InternalError("encode: wrong length");
    std::vector<Int> v = mul_row(user, to_canon_);
    Elem e(dim());
    for (std::size_t t = 0; t < kept_.size(); ++t) e[t] = v[kept_[t]];
    return reduce(std::move(e));
}

std::vector<Int> AbelianGroup::decode(const Elem& canonical) const {
    if (canonical.size() != dim()) throw InternalError("decode: wrong length");
    std::vector<Int> full(ngens_, Int(0));
    for (std::size_t t = 0; t < kept_.size(); ++t) full[kept_[t]] = canonical[t];
    return mul_row(full, from_canon_);
}

AbelianGroup::Elem AbelianGroup::basis(std::size_t k) const {
    Elem e = zero();
    e[k] = 1;
    return reduce(std::move(e));
}

AbelianGroup::Elem AbelianGroup::reduce(Elem a) const {
    for (std::size_t k = 0; k < torsion_.size(); ++k) a[k] = pos_mod(a[k], torsion_[k]);
    return a;
}

AbelianGroup::Elem AbelianGroup::add(const Elem& a, const Elem& b) const {
    Elem r(dim());
    for (std::size_t k = 0; k < dim(); ++k) r[k] = a[k] + b[k];
    return reduce(std::move(r));
}

AbelianGroup::Elem AbelianGroup::neg(const Elem& a) const {
    Elem r(dim());
    for (std::size_t k = 0; k < dim(); ++k) r[k] = -a[k];
    return reduce(std::move(r));
}

AbelianGroup::Elem AbelianGroup::scale(const Int& n, const Elem& a) const {
    Elem r(dim());
    for (std::size_t k = 0; k < dim(); ++k) r[k] = n * a[k];
    return reduce(std::move(r));
}

bool AbelianGroup::is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

Int AbelianGroup::element_order(const Elem& a) const {
    for (std::size_t k = torsion_.size(); k < dim(); ++k)
        if (a[k] != 0) return 0;
    Int o = 1;
    for (std::size_t k = 0; k < torsion_.size(); ++k) {
        if (a[k] == 0) continue;
        Int g;
        mpz_gcd(g.get_mpz_t(), a[k].get_mpz_t(), torsion_[k].get_mpz_t());
        o = lcm(o, torsion_[k] / g);
    }
    return o;
}

Int AbelianGroup::torsion_exponent() const {
    Int e = 1;
    for (const Int& d : torsion_) e = lcm(e, d);
    return e;
}

Int AbelianGroup::order() const {
    if (rank_ > 0) return 0;
    Int o = 1;
    for (const Int& d : torsion_) o *= d;
    return o;
}

std::vector<AbelianGroup::Elem> AbelianGroup::enumerate(unsigned long budget) const {
    Int o = order();
    if (o == 0) throw InternalError("enumerate: infinite group");
    if (o > budget) throw enumeration_budget_exceeded("group of order " + o.get_str());
    std::vector<Elem> out;
    Elem cur = zero();
    while (true) {
        out.push_back(cur);
        std::size_t k = 0;
        for (; k < torsion_.size(); ++k) {
            cur[k] += 1;
            if (cur[k] < torsion_[k]) break;
            cur[k] = 0;
        }
        if (k == torsion_.size()) break;
    }
    return out;
}

std::string AbelianGroup::render() const {
    std::ostringstream os;
    bool first = true;
    if (rank_ > 0) {
        os << "Z";
        if (rank_ > 1) os << "^" << rank_;
        first = false;
    }
    for (const Int& d : torsion_) {
        if (!first) os << " x ";
        os << "Z/" << d.get_str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// Stacked matrix [gens; torsion relations] over Z^dim.
IntMatrix stacked_lattice(const AbelianGroup& a,
                          const std::vector<AbelianGroup::Elem>& gens) {
    std::vector<std::vector<Int>> rows;
    for (const auto& g : gens) rows.push_back(g);
    for (std::size_t k = 0; k < a.torsion_count(); ++k) {
        std::vector<Int> r(a.dim(), Int(0));
        r[k] = a.modulus(k);
        rows.push_back(std::move(r));
    }
    if (rows.empty()) return IntMatrix(0, a.dim());
    return IntMatrix::from_rows(rows);
}

IntMatrix nonzero_rows(const IntMatrix& h, std::size_t rank) {
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < rank; ++i) rows.push_back(h.row(i));
    if (rows.empty()) return IntMatrix(0, h.cols());
    return IntMatrix::from_rows(rows);
}

} // namespace

Submodule::Submodule(const AbelianGroup& ambient, std::vector<AbelianGroup::Elem> gens)
    : ambient_(ambient), gens_(std::move(gens)) {
    for (const auto& g : gens_)
        if (g.size() != ambient_.dim()) throw InternalError("submodule generator length");
    HnfResult hr = hnf(stacked_lattice(ambient_, gens_));
    lattice_ = nonzero_rows(hr.h, hr.rank);
}

bool Submodule::contains(const AbelianGroup::Elem& e) const {
    if (lattice_.rows() == 0) return ambient_.is_zero(e);
    return solve_left(lattice_, e).has_value();
}

std::optional<std::vector<Int>> Submodule::coords_of(const AbelianGroup::Elem& e) const {
    IntMatrix m = stacked_lattice(ambient_, gens_);
    if (m.rows() == 0) {
        if (ambient_.is_zero(e)) return std::vector<Int>{};
        return std::nullopt;
    }
    auto sol = solve_left(m, e);
    if (!sol) return std::nullopt;
    sol->resize(gens_.size());
    return sol;
}

Submodule Submodule::meet(const Submodule& other) const {
    if (ambient_.dim() != other.ambient_.dim())
        throw ValidationError("AmbientMismatch", "submodule meet across different ambients");
    IntMatrix inter = lattice_intersection(lattice_, other.lattice_);
    std::vector<AbelianGroup::Elem> gens;
    for (std::size_t i = 0; i < inter.rows(); ++i)
        gens.push_back(ambient_.reduce(inter.row(i)));
    return Submodule(ambient_, gens);
}

bool Submodule::equals(const Submodule& other) const {
    return lattice_ == other.lattice_;
}

bool Submodule::is_whole() const {
    for (std::size_t k = 0; k < ambient_.dim(); ++k)
        if (!contains(ambient_.basis(k))) return false;
    return true;
}

Submodule::Quotient Submodule::quotient() const {
    Quotient q{AbelianGroup::from_relations(ambient_.dim(), lattice_)};
    return q;
}

AbelianGroup::Elem Submodule::Quotient::project(const AbelianGroup& ambient,
                                                const AbelianGroup::Elem& e) const {
    (void)ambient;
    return group.encode(e);
}

Int Submodule::index() const {
    return quotient().group.order();
}

Submodule whole_submodule(const AbelianGroup& a) {
    std::vector<AbelianGroup::Elem> gens;
    for (std::size_t k = 0; k < a.dim(); ++k) gens.push_back(a.basis(k));
    return Submodule(a, gens);
}

Submodule multiple_submodule(const AbelianGroup& a, const Int& n) {
    std::vector<AbelianGroup::Elem> gens;
    for (std::size_t k = 0; k < a.dim(); ++k) gens.push_back(a.scale(n, a.basis(k)));
    return Submodule(a, gens);
}

// ---------------------------------------------------------------------------

HomGroup::HomGroup(AbelianGroup a, AbelianGroup b)
    : domain_(std::move(a)), codomain_(std::move(b)) {
    std::vector<Int> orders;
    for (std::size_t i = 0; i < domain_.dim(); ++i) {
        Int ai = domain_.modulus(i);
        for (std::size_t j = 0; j < codomain_.dim(); ++j) {
            Int bj = codomain_.modulus(j);
            if (ai == 0 && bj == 0) {
                pieces_.push_back({i, j, Int(1)});
                orders.push_back(0);
            } else if (ai == 0) {
                pieces_.push_back({i, j, Int(1)});
                orders.push_back(bj);
            } else if (bj == 0) {
                // Hom(Z/a, Z) = 0
            } else {
                Int g;
                mpz_gcd(g.get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
                pieces_.push_back({i, j, bj / g});
                orders.push_back(g);
            }
        }
    }
    group_ = AbelianGroup::direct_sum(orders);
}

AbelianGroup::Elem HomGroup::eval(const AbelianGroup::Elem& f,
                                  const AbelianGroup::Elem& x) const {
    std::vector<Int> coeffs = group_.decode(f);
    AbelianGroup::Elem out = codomain_.zero();
    for (std::size_t p = 0; p < pieces_.size(); ++p) {
        const Piece& pc = pieces_[p];
        out[pc.j] += coeffs[p] * pc.gen_image * x[pc.i];
    }
    return codomain_.reduce(std::move(out));
}

std::optional<AbelianGroup::Elem>
HomGroup::from_values(const std::vector<AbelianGroup::Elem>& values) const {
    if (values.size() != domain_.dim()) throw InternalError("from_values: wrong count");
    std::vector<Int> coeffs(pieces_.size(), Int(0));
    // coordinates not covered by a piece must carry zero value
    for (std::size_t i = 0; i < domain_.dim(); ++i) {
        if (domain_.modulus(i) == 0) continue;
        for (std::size_t j = 0; j < codomain_.dim(); ++j)
            if (codomain_.modulus(j) == 0 && values[i][j] != 0) return std::nullopt;
    }
    for (std::size_t p = 0; p < pieces_.size(); ++p) {
        const Piece& pc = pieces_[p];
        const Int& v = values[pc.i][pc.j];
        Int bj = codomain_.modulus(pc.j);
        if (pc.gen_image == 1) {
            coeffs[p] = v;
        } else {
            if (v % pc.gen_image != 0) return std::nullopt;
            Int order = bj / pc.gen_image;  // = gcd(ai, bj)
            coeffs[p] = pos_mod(v / pc.gen_image, order);
        }
    }
    return group_.encode(coeffs);
}

// ---------------------------------------------------------------------------

Int choose_m2(const AbelianGroup& h, const Submodule& w, const Int& m1) {
    if (m1 <= 0) throw ValidationError("choose_m2: m1 must be positive");
    // factor one: exponent of the image of H's torsion subgroup in H/W
    Submodule::Quotient q = w.quotient();
    Int e1 = 1;
    for (std::size_t k = 0; k < h.torsion_count(); ++k) {
        Int o = q.group.element_order(q.project(h, h.basis(k)));
        if (o == 0) throw InternalError("torsion image has infinite order");
        Int l;
        mpz_lcm(l.get_mpz_t(), e1.get_mpz_t(), o.get_mpz_t());
        e1 = l;
    }
    // factor two: saturation index of the free part of W
    Int s = 1;
    if (h.rank() > 0 && !w.gens().empty()) {
        std::vector<std::vector<Int>> rows;
        for (const auto& g : w.gens()) {
            std::vector<Int> r(h.rank());
            for (std::size_t k = 0; k < h.rank(); ++k) r[k] = g[h.torsion_count() + k];
            rows.push_back(std::move(r));
        }
        SnfResult sr = snf(IntMatrix::from_rows(rows));
        for (const Int& d : sr.divisors) s *= d;
    }
    Int m2 = m1 * e1 * s;

    // independent check: W ∩ m2*H ⊆ m1*W
    Submodule meet = w.meet(multiple_submodule(h, m2));
    std::vector<AbelianGroup::Elem> m1w_gens;
    for (const auto& g : w.gens()) m1w_gens.push_back(h.scale(m1, g));
    Submodule m1w(h, m1w_gens);
    for (std::size_t i = 0; i < meet.lattice().rows(); ++i) {
        AbelianGroup::Elem e = h.reduce(meet.lattice().row(i));
        if (!m1w.contains(e))
            throw InternalError("choose_m2 postcondition failed");
    }
    return m2;
}

} // namespace csp::zlinalg
