#include "oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

#include "chu/rng.hpp"

namespace chu::oracle {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

OracleCharacters regular_rep_characters(const GroupTable& g, std::uint64_t seed) {
    const int n = g.order;
    OracleCharacters out;
    out.classes = conjugacy_classes(g);
    const int k = out.classes.count();

    for (int attempt = 0; attempt < 5; ++attempt) {
        Rng rng(seed + attempt);
        Matrix h(n, n);
        for (int i = 0; i < n; ++i) {
            h(i, i) = Complex(rng.next_signed(), 0.0);
            for (int j = i + 1; j < n; ++j) {
                Complex v(rng.next_signed(), rng.next_signed());
                h(i, j) = v;
                h(j, i) = std::conj(v);
            }
        }
        // T = sum_x P_x H P_x^*; left multiplication permutes indices:
        // (P_x H P_x^*)[u][v] = H[x^-1 u][x^-1 v]
        Matrix t = Matrix::Zero(n, n);
        for (int x = 0; x < n; ++x) {
            int xi = g.inv[x];
            for (int u = 0; u < n; ++u) {
                int pu = g.at(xi, u);
                for (int v = 0; v < n; ++v) t(u, v) += h(pu, g.at(xi, v));
            }
        }

        Eigen::SelfAdjointEigenSolver<Matrix> eig(t);
        const auto& ev = eig.eigenvalues();
        double scale = std::max(std::abs(ev[0]), std::abs(ev[n - 1])) + 1.0;

        out.degrees.clear();
        out.values.clear();
        bool good = true;
        int lo = 0;
        while (lo < n && good) {
            int hi = lo + 1;
            while (hi < n && ev[hi] - ev[lo] < 1e-7 * scale) ++hi;
            const int dim = hi - lo;
            Matrix basis = eig.eigenvectors().middleCols(lo, dim);

            std::vector<Complex> chi(k);
            for (int j = 0; j < k; ++j) {
                int rep = out.classes.reps[j];
                // trace(B^* P_rep B) without forming P_rep
                Matrix permuted(n, dim);
                int ri = g.inv[rep];
                for (int u = 0; u < n; ++u) permuted.row(u) = basis.row(g.at(ri, u));
                chi[j] = (basis.adjoint() * permuted).trace();
            }
            // irreducibility certificate: sum |chi|^2 weighted by class size
            double norm = 0.0;
            for (int j = 0; j < k; ++j)
                norm += out.classes.sizes[j] * std::norm(chi[j]);
            norm /= n;
            if (std::abs(norm - 1.0) > 1e-6 || std::abs(chi[0].real() - dim) > 1e-6 ||
                std::abs(chi[0].imag()) > 1e-6) {
                good = false; // merged eigenvalues across components; reseed
                break;
            }
            // record if not seen yet
            bool seen = false;
            for (const auto& row : out.values) {
                double diff = 0.0;
                for (int j = 0; j < k; ++j) diff = std::max(diff, std::abs(row[j] - chi[j]));
                if (diff < 1e-5) {
                    seen = true;
                    break;
                }
            }
            if (!seen) {
                out.degrees.push_back(dim);
                out.values.push_back(std::move(chi));
            }
            lo = hi;
        }
        if (!good) continue;
        long long sq = 0;
        for (int d : out.degrees) sq += static_cast<long long>(d) * d;
        if (static_cast<int>(out.degrees.size()) == k && sq == n) return out;
    }
    throw std::runtime_error("oracle decomposition failed to stabilize");
}

int oracle_min_nontrivial_degree(const OracleCharacters& t) {
    int best = 0;
    for (std::size_t r = 0; r < t.values.size(); ++r) {
        bool trivial = true;
        for (const auto& v : t.values[r])
            if (std::abs(v - Complex(1, 0)) > 1e-6) trivial = false;
        if (trivial) continue;
        if (best == 0 || t.degrees[r] < best) best = t.degrees[r];
    }
    return best;
}

int oracle_mdus(const OracleCharacters& t, const GroupTable& g) {
    const int k = t.classes.count();
    for (int n = 1;; ++n) {
        std::vector<char> joint(k, 1); // class-level joint kernel
        bool any = false;
        for (std::size_t r = 0; r < t.values.size(); ++r) {
            if (t.degrees[r] > n) continue;
            any = true;
            double d = t.degrees[r];
            for (int j = 0; j < k; ++j)
                if (std::abs(t.values[r][j] - Complex(d, 0)) > 1e-6) joint[j] = 0;
        }
        bool trivial = true;
        for (int j = 1; j < k; ++j)
            if (joint[j]) trivial = false;
        if (any && trivial) return n;
        if (n > g.order) throw std::runtime_error("oracle mdus did not terminate");
    }
}

} // namespace chu::oracle
