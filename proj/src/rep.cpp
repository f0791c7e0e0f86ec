#include "chu/rep.hpp"

#include <algorithm>

#include "chu/errors.hpp"
#include "chu/rng.hpp"

namespace chu {

namespace {

bool same_group(const GroupTable* a, const GroupTable* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->order == b->order && a->mult == b->mult;
}

Matrix random_hermitian(int n, Rng& rng) {
    Matrix h(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = Complex(rng.next_signed(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            Complex v(rng.next_signed(), rng.next_signed());
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

Matrix random_matrix(int n, Rng& rng) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(rng.next_signed(), rng.next_signed());
    return m;
}

/// Deterministic blocked matrix average over all group elements.
template <typename TermFn>
Matrix group_average(int order, int dim, TermFn&& term, ExecMode mode) {
    Matrix zero = Matrix::Zero(dim, dim);
    Matrix sum = blocked_reduce<Matrix>(
        static_cast<std::size_t>(order), zero,
        [&](Matrix& acc, std::size_t g) { acc += term(static_cast<int>(g)); },
        [](Matrix& tot, const Matrix& part) { tot += part; }, mode);
    return sum / static_cast<double>(order);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace

std::string BlockStructure::render() const {
    switch (kind) {
        case Kind::Atom:
            return atom_row >= 0 ? "atom(" + std::to_string(atom_row) + ")" : "atom";
        case Kind::DirectSum:
            return "dsum(" + children[0].render() + "," + children[1].render() + ")";
        case Kind::Tensor:
            return "tensor(" + children[0].render() + "," + children[1].render() + ")";
    }
    return "atom";
}

double max_abs(const Matrix& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
    return best;
}

void verify_unitary_rep(const UnitaryRep& rep, const CharacterTable* table, ExecMode mode) {
    const GroupTable& g = *rep.group;
    const int n = g.order;
    const Matrix eye = Matrix::Identity(rep.degree, rep.degree);

    double unit = blocked_reduce<double>(
        static_cast<std::size_t>(n), 0.0,
        [&](double& acc, std::size_t x) {
            acc = std::max(acc, max_abs(rep.at(static_cast<int>(x)).adjoint() *
                                            rep.at(static_cast<int>(x)) -
                                        eye));
        },
        [](double& t, double v) { t = std::max(t, v); }, mode);
    if (unit > kUnitaryTol)
        throw NumericalFailure("unitarity residual " + std::to_string(unit));

    // homomorphism: full check for small groups, sampled otherwise
    double hom = 0.0;
    if (n <= 512) {
        hom = blocked_reduce<double>(
            static_cast<std::size_t>(n), 0.0,
            [&](double& acc, std::size_t x) {
                for (int y = 0; y < n; ++y)
                    acc = std::max(acc, max_abs(rep.at(g.at(static_cast<int>(x), y)) -
                                                rep.at(static_cast<int>(x)) * rep.at(y)));
            },
            [](double& t, double v) { t = std::max(t, v); }, mode);
    } else {
        constexpr int kSamples = 10000;
        hom = blocked_reduce<double>(
            kSamples, 0.0,
            [&](double& acc, std::size_t i) {
                Rng rng(0x7a11ULL + i);
                int x = static_cast<int>(rng.next_below(n));
                int y = static_cast<int>(rng.next_below(n));
                acc = std::max(acc, max_abs(rep.at(g.at(x, y)) - rep.at(x) * rep.at(y)));
            },
            [](double& t, double v) { t = std::max(t, v); }, mode);
    }
    if (hom > kHomomorphismTol)
        throw NumericalFailure("homomorphism residual " + std::to_string(hom));

    if (table && rep.character_row) {
        int row = *rep.character_row;
        for (int x = 0; x < n; ++x) {
            Complex want = table->value_at_element(row, x);
            if (std::abs(rep.trace_at(x) - want) > kTraceTol)
                throw NumericalFailure("trace does not match the claimed character row");
        }
    }
}

UnitaryRep irrep_matrices(const GroupTable& g, const CharacterTable& t, int row,
                          std::uint64_t seed, ExecMode mode) {
    if (row < 0 || row >= t.count()) throw InvalidSpec("character row out of range");
    const int n = g.order;
    const int d = t.degrees[row];

    UnitaryRep rep;
    rep.group = &g;
    rep.degree = d;
    rep.character_row = row;
    rep.block_structure = BlockStructure{BlockStructure::Kind::Atom, row, {}};
    rep.matrices.resize(n);

    if (d == 1) {
        for (int x = 0; x < n; ++x) {
            Matrix m(1, 1);
            m(0, 0) = t.value_at_element(row, x);
            rep.matrices[x] = m;
        }
        verify_unitary_rep(rep, &t, mode);
        return rep;
    }

    // central idempotent coefficients: c(x) = d/|G| * conj(chi(x))
    std::vector<Complex> coef(n);
    for (int x = 0; x < n; ++x)
        coef[x] = static_cast<double>(d) / static_cast<double>(n) *
                  std::conj(t.value_at_element(row, x));
    const int iso_dim = d * d;

    auto project = [&](const Eigen::VectorXcd& v) {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
        for (int x = 0; x < n; ++x) {
            if (std::abs(coef[x]) < 1e-15) continue;
            // (lambda(x) v)[y] = v[x^-1 y]
            int xi = g.inv[x];
            for (int y = 0; y < n; ++y) out[y] += coef[x] * v[g.at(xi, y)];
        }
        return out;
    };

    for (int attempt = 0; attempt < 8; ++attempt) {
        Rng rng(seed + attempt);

        // orthonormal basis of the isotypic component
        Matrix raw(n, iso_dim);
        for (int c = 0; c < iso_dim; ++c) {
            Eigen::VectorXcd v(n);
            for (int y = 0; y < n; ++y) v[y] = Complex(rng.next_signed(), rng.next_signed());
            raw.col(c) = project(v);
        }
        Eigen::HouseholderQR<Matrix> qr(raw);
        Matrix r_factor = qr.matrixQR().topRows(iso_dim).triangularView<Eigen::Upper>();
        double rmax = 0.0, rmin = 1e300;
        for (int i = 0; i < iso_dim; ++i) {
            double v = std::abs(r_factor(i, i));
            rmax = std::max(rmax, v);
            rmin = std::min(rmin, v);
        }
        if (rmax <= 0.0 || rmin < 1e-8 * rmax) continue; // projected vectors degenerate
        Matrix basis = qr.householderQ() * Matrix::Identity(n, iso_dim);

        // action on the component: rho(g) = B^* lambda(g) B
        std::vector<Matrix> rho(n);
        parallel_for(
            static_cast<std::size_t>(n),
            [&](std::size_t x) {
                Matrix shifted(n, iso_dim);
                int xi = g.inv[static_cast<int>(x)];
                for (int y = 0; y < n; ++y) shifted.row(y) = basis.row(g.at(xi, y));
                rho[x] = basis.adjoint() * shifted;
            },
            mode);

        // invariant Hermitian operator; its eigenspaces are G-submodules
        Matrix h = random_hermitian(iso_dim, rng);
        Matrix invariant = group_average(
            n, iso_dim, [&](int x) { return Matrix(rho[x] * h * rho[x].adjoint()); }, mode);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(invariant);
        const auto& evals = eig.eigenvalues();
        int cluster = 1;
        while (cluster < iso_dim && evals[cluster] - evals[0] < 1e-6) ++cluster;
        if (cluster != d) continue; // degenerate split; retry with the next seed
        if (cluster < iso_dim && evals[cluster] - evals[cluster - 1] < 1e-6) continue;

        Matrix block = eig.eigenvectors().leftCols(d);
        for (int x = 0; x < n; ++x) rep.matrices[x] = block.adjoint() * rho[x] * block;

        // Gram-average unitarization (Weyl trick)
        Matrix gram = group_average(
            n, d, [&](int x) { return Matrix(rep.at(x).adjoint() * rep.at(x)); }, mode);
        Eigen::SelfAdjointEigenSolver<Matrix> geig(gram);
        Eigen::VectorXd ge = geig.eigenvalues();
        Eigen::VectorXd half(d), ihalf(d);
        for (int i = 0; i < d; ++i) {
            if (ge[i] <= 0) throw NumericalFailure("Gram form is not positive definite");
            half[i] = std::sqrt(ge[i]);
            ihalf[i] = 1.0 / half[i];
        }
        Matrix s_half = geig.eigenvectors() * half.asDiagonal() * geig.eigenvectors().adjoint();
        Matrix s_ihalf = geig.eigenvectors() * ihalf.asDiagonal() * geig.eigenvectors().adjoint();
        for (int x = 0; x < n; ++x) rep.matrices[x] = s_half * rep.at(x) * s_ihalf;

        verify_unitary_rep(rep, &t, mode);
        return rep;
    }
    throw NumericalFailure("irreducible block split stayed degenerate after 8 reseeds");
}

UnitaryRep direct_sum(const UnitaryRep& r1, const UnitaryRep& r2) {
    if (!same_group(r1.group, r2.group))
        throw GroupMismatch("direct_sum needs representations of the same group");
    UnitaryRep out;
    out.group = r1.group;
    out.degree = r1.degree + r2.degree;
    out.block_structure =
        BlockStructure{BlockStructure::Kind::DirectSum, -1, {r1.block_structure, r2.block_structure}};
    out.matrices.resize(r1.group->order);
    for (int x = 0; x < r1.group->order; ++x) {
        Matrix m = Matrix::Zero(out.degree, out.degree);
        m.topLeftCorner(r1.degree, r1.degree) = r1.at(x);
        m.bottomRightCorner(r2.degree, r2.degree) = r2.at(x);
        out.matrices[x] = m;
    }
    return out;
}

UnitaryRep tensor_product(const UnitaryRep& r1, const UnitaryRep& r2) {
    if (!same_group(r1.group, r2.group))
        throw GroupMismatch("tensor_product needs representations of the same group");
    UnitaryRep out;
    out.group = r1.group;
    out.degree = r1.degree * r2.degree;
    out.block_structure =
        BlockStructure{BlockStructure::Kind::Tensor, -1, {r1.block_structure, r2.block_structure}};
    out.matrices.resize(r1.group->order);
    for (int x = 0; x < r1.group->order; ++x) out.matrices[x] = kron(r1.at(x), r2.at(x));
    return out;
}

EquivalenceResult are_equivalent(const UnitaryRep& r1, const UnitaryRep& r2,
                                 std::uint64_t seed) {
    if (!same_group(r1.group, r2.group))
        throw GroupMismatch("are_equivalent needs representations of the same group");
    if (r1.degree != r2.degree)
        throw DegreeMismatch("are_equivalent needs equal degrees");
    const GroupTable& g = *r1.group;
    auto classes = conjugacy_classes(g);

    EquivalenceResult res;
    for (int j = 0; j < classes.count(); ++j) {
        double diff = std::abs(r1.trace_at(classes.reps[j]) - r2.trace_at(classes.reps[j]));
        res.char_distance = std::max(res.char_distance, diff);
    }
    res.equivalent = res.char_distance <= kEquivCharTol;
    if (!res.equivalent) return res;

    const int d = r1.degree;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Rng rng(seed + attempt);
        Matrix x = random_matrix(d, rng);
        Matrix avg = Matrix::Zero(d, d);
        for (int t = 0; t < g.order; ++t) avg += r1.at(t) * x * r2.at(t).adjoint();
        avg /= static_cast<double>(g.order);
        Eigen::JacobiSVD<Matrix> svd(avg);
        double smax = svd.singularValues()[0];
        if (smax < 1e-8) continue;
        Matrix u = avg / smax;
        double residual = 0.0;
        for (int t = 0; t < g.order; ++t)
            residual = std::max(residual, max_abs(r1.at(t) * u - u * r2.at(t)));
        if (residual <= kIntertwinerTol) {
            res.intertwiner = u;
            res.max_residual = residual;
            return res;
        }
    }
    throw NumericalFailure("intertwiner averaging failed for equivalent characters");
}

EvaluationMapReport evaluation_map_check(const GroupTable& g, int element,
                                         const std::vector<const UnitaryRep*>& reps,
                                         std::uint64_t seed) {
    EvaluationMapReport report;
    for (const auto* r : reps)
        if (!same_group(r->group, &g))
            throw GroupMismatch("evaluation_map_check needs representations of this group");

    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i; j < reps.size(); ++j) {
            const UnitaryRep& a = *reps[i];
            const UnitaryRep& b = *reps[j];
            ++report.pairs_checked;

            UnitaryRep ds = direct_sum(a, b);
            Matrix want = Matrix::Zero(ds.degree, ds.degree);
            want.topLeftCorner(a.degree, a.degree) = a.at(element);
            want.bottomRightCorner(b.degree, b.degree) = b.at(element);
            report.max_dsum_residual =
                std::max(report.max_dsum_residual, max_abs(ds.at(element) - want));

            UnitaryRep tp = tensor_product(a, b);
            report.max_tensor_residual = std::max(
                report.max_tensor_residual, max_abs(tp.at(element) - kron(a.at(element), b.at(element))));

            if (a.degree == b.degree) {
                EquivalenceResult eq = are_equivalent(a, b, seed);
                if (eq.equivalent && eq.intertwiner) {
                    ++report.equivalent_pairs;
                    const Matrix& u = *eq.intertwiner;
                    report.max_equiv_residual =
                        std::max(report.max_equiv_residual,
                                 max_abs(a.at(element) * u - u * b.at(element)));
                }
            }
        }
    return report;
}

// ---------------------------------------------------------------------------
// product-group representations
// ---------------------------------------------------------------------------

ProductGroup make_product(std::vector<GroupTable> factors, int materialize_cap, ExecMode mode) {
    if (factors.empty()) throw InvalidSpec("product needs at least one factor");
    ProductGroup p;
    p.factors = std::move(factors);
    const int r = p.factor_count();
    p.strides.assign(r, 1);
    long long total = 1;
    bool overflow = false;
    for (int i = r - 1; i >= 0; --i) {
        p.strides[i] = overflow ? 0 : total;
        if (!overflow) {
            if (total > (1LL << 62) / p.factors[i].order)
                overflow = true;
            else
                total *= p.factors[i].order;
        }
    }
    if (!overflow) p.order = total;

    if (p.order && *p.order <= materialize_cap) {
        std::vector<GroupTable> copy = p.factors;
        // reuse the DirectProduct builder through its spec-level entry point
        GroupTable t;
        t.order = static_cast<int>(*p.order);
        t.mult.resize(static_cast<std::size_t>(t.order) * t.order);
        t.inv.resize(t.order);
        t.labels.reserve(t.order);
        std::vector<int> comps(r);
        for (int x = 0; x < t.order; ++x) {
            p.decode(x, comps);
            std::string l = "(";
            for (int i = 0; i < r; ++i) l += (i ? "|" : "") + p.factors[i].label_of(comps[i]);
            t.labels.push_back(l + ")");
        }
        for (int i = 0; i < r; ++i) t.name += (i ? "x" : "") + p.factors[i].name;
        parallel_for(
            static_cast<std::size_t>(t.order),
            [&](std::size_t x) {
                std::vector<int> xc(r), yc(r);
                p.decode(static_cast<long long>(x), xc);
                for (int y = 0; y < t.order; ++y) {
                    p.decode(y, yc);
                    long long z = 0;
                    for (int i = 0; i < r; ++i)
                        z += p.strides[i] * p.factors[i].at(xc[i], yc[i]);
                    t.mult[x * t.order + y] = static_cast<std::int32_t>(z);
                }
                long long z = 0;
                for (int i = 0; i < r; ++i) z += p.strides[i] * p.factors[i].inv[xc[i]];
                t.inv[x] = static_cast<std::int32_t>(z);
            },
            mode);
        verify_group_table(t, mode);
        p.table = std::move(t);
    }
    return p;
}

ProductRep inflate_rep(const ProductGroup& p,
                       const std::vector<std::optional<UnitaryRep>>& components) {
    if (static_cast<int>(components.size()) != p.factor_count())
        throw NotAProduct("component list length must match the factor count");
    ProductRep rep;
    rep.product = &p;
    rep.components = components;
    rep.degree = 1;
    for (int i = 0; i < p.factor_count(); ++i)
        if (components[i]) {
            if (!same_group(components[i]->group, &p.factors[i]))
                throw GroupMismatch("component does not act on factor " + std::to_string(i));
            rep.degree *= components[i]->degree;
        }
    return rep;
}

Matrix ProductRep::at_tuple(const std::vector<int>& tuple) const {
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < product->factor_count(); ++i) {
        if (!components[i]) continue;
        out = kron(out, components[i]->at(tuple[i])).eval();
    }
    return out;
}

UnitaryRep materialize_rep(const ProductRep& rep) {
    const ProductGroup& p = *rep.product;
    if (!p.table) throw NotAProduct("product table was not materialized");
    UnitaryRep out;
    out.group = &*p.table;
    out.degree = rep.degree;
    out.matrices.resize(p.table->order);
    std::vector<int> tuple(p.factor_count());
    for (int x = 0; x < p.table->order; ++x) {
        p.decode(x, tuple);
        out.matrices[x] = rep.at_tuple(tuple);
    }
    return out;
}

std::vector<int> derived_support(const ProductRep& rep, double tol) {
    std::vector<int> support;
    const ProductGroup& p = *rep.product;
    for (int i = 0; i < p.factor_count(); ++i) {
        if (!rep.components[i]) continue;
        const UnitaryRep& comp = *rep.components[i];
        Subgroup derived = commutator_subgroup(p.factors[i]);
        const Matrix eye = Matrix::Identity(comp.degree, comp.degree);
        bool nontrivial = false;
        for (int x : derived.members)
            if (max_abs(comp.at(x) - eye) > tol) {
                nontrivial = true;
                break;
            }
        if (nontrivial) support.push_back(i);
    }
    return support;
}

std::vector<int> derived_support(const UnitaryRep& rep, const ProductGroup& p, double tol) {
    if (!p.table || !same_group(rep.group, &*p.table))
        throw NotAProduct("representation does not act on this product");
    std::vector<int> support;
    const Matrix eye = Matrix::Identity(rep.degree, rep.degree);
    for (int i = 0; i < p.factor_count(); ++i) {
        Subgroup derived = commutator_subgroup(p.factors[i]);
        bool nontrivial = false;
        for (int x : derived.members) {
            long long e = p.embed(i, x);
            if (max_abs(rep.at(static_cast<int>(e)) - eye) > tol) {
                nontrivial = true;
                break;
            }
        }
        if (nontrivial) support.push_back(i);
    }
    return support;
}

// Lives here rather than char_table.cpp because it needs explicit matrices.
int image_exponent_on_derived(const CharacterTable& t, int row, std::uint64_t seed) {
    const GroupTable& g = *t.group;
    Subgroup derived = commutator_subgroup(g);
    bool in_kernel = true;
    const double d = static_cast<double>(t.degrees[row]);
    for (int x : derived.members)
        if (std::abs(t.value_at_element(row, x) - Complex(d, 0)) > kValueGridTol) {
            in_kernel = false;
            break;
        }
    if (in_kernel) return 1;

    UnitaryRep rep = irrep_matrices(g, t, row, seed);
    const Matrix eye = Matrix::Identity(rep.degree, rep.degree);
    std::int64_t e = 1;
    for (int x : derived.members) {
        Matrix power = rep.at(x);
        int ord = 1;
        while (max_abs(power - eye) > kUnitaryTol) {
            power = power * rep.at(x);
            ++ord;
            if (ord > g.order) throw NumericalFailure("matrix order did not close");
        }
        e = lcm64(e, ord);
    }
    return static_cast<int>(e);
}

} // namespace chu
