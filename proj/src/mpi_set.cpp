#include "softcilqr/mpi_set.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "softcilqr/linprog.hpp"

namespace softcilqr {

AugmentedSystem build_augmented(const LinearModel& model, const Eigen::RowVector4d& K,
                                const ConstraintBounds& bounds, double M,
                                double eps_max) {
    if (!(M >= 0.0 && M < 1.0))
        throw std::invalid_argument("build_augmented: M must be in [0, 1)");
    if (!(eps_max > 0.0))
        throw std::invalid_argument("build_augmented: eps_max must be positive");
    if (!(bounds.delta_max > 0.0 && bounds.delta_dot_max > 0.0 &&
          bounds.theta_max > 0.0 && bounds.theta_dot_max > 0.0 &&
          bounds.steer_max > 0.0))
        throw std::invalid_argument("build_augmented: bounds must be positive");

    AugmentedSystem aug;
    aug.eps_max = eps_max;
    aug.decay = M;
    aug.delta_bar = bounds.delta_max / (1.0 + eps_max);
    aug.steer_bar = bounds.steer_max / (1.0 + eps_max);

    aug.Atil.setZero();
    aug.Atil.topLeftCorner<4, 4>() = model.A;
    aug.Atil(4, 4) = M;
    aug.Atil(5, 5) = M;
    aug.Btil.setZero();
    aug.Btil.head<4>() = model.B;
    aug.Ktil.setZero();
    aug.Ktil.head<4>() = K;

    aug.Ftil.setZero();
    aug.Gtil.setZero();
    aug.htil.setZero();
    const double box[4] = {bounds.delta_max, bounds.delta_dot_max, bounds.theta_max,
                           bounds.theta_dot_max};
    for (int k = 0; k < 4; ++k) {
        aug.Ftil(2 * k, k) = -1.0;
        aug.Ftil(2 * k + 1, k) = 1.0;
        aug.htil(2 * k) = box[k];
        aug.htil(2 * k + 1) = box[k];
    }
    aug.Gtil(8) = -1.0;
    aug.Gtil(9) = 1.0;
    aug.htil(8) = bounds.steer_max;
    aug.htil(9) = bounds.steer_max;
    aug.Ftil(10, 4) = -1.0;
    aug.Ftil(11, 4) = 1.0;
    aug.htil(11) = eps_max;
    aug.Ftil(12, 5) = -1.0;
    aug.Ftil(13, 5) = 1.0;
    aug.htil(13) = eps_max;
    aug.Ftil(14, 0) = -1.0;
    aug.Ftil(14, 4) = -aug.delta_bar;
    aug.htil(14) = aug.delta_bar;
    aug.Ftil(15, 0) = 1.0;
    aug.Ftil(15, 4) = -aug.delta_bar;
    aug.htil(15) = aug.delta_bar;
    aug.Ftil.block<1, 4>(16, 0) = -K;
    aug.Ftil(16, 5) = -aug.steer_bar;
    aug.htil(16) = aug.steer_bar;
    aug.Ftil.block<1, 4>(17, 0) = K;
    aug.Ftil(17, 5) = -aug.steer_bar;
    aug.htil(17) = aug.steer_bar;
    return aug;
}

namespace {

// Componentwise box the i=0 rows imply; every feasible point lies inside it.
struct OuterBox {
    Vector6d lo, hi;
    explicit OuterBox(const AugmentedSystem& aug) {
        const double dmax = aug.htil(0), dd = aug.htil(2), th = aug.htil(4),
                     td = aug.htil(6);
        lo << -dmax, -dd, -th, -td, 0.0, 0.0;
        hi << dmax, dd, th, td, aug.eps_max, aug.eps_max;
    }
    double max_of(const RowVector6d& r) const {
        double s = 0.0;
        for (int k = 0; k < 6; ++k) s += std::max(r(k) * lo(k), r(k) * hi(k));
        return s;
    }
};

// Constraint accumulator with sound redundancy pruning: rows whose maximum
// over the outer box cannot exceed h, and rows that are positive multiples
// of an already-kept row with an equal-or-looser bound, are dropped. Neither
// kind changes the feasible set.
struct Polytope {
    std::vector<RowVector6d> rows;
    std::vector<double> rhs;

    void add(const RowVector6d& r, double h, const OuterBox& box, bool prune) {
        const double norm = r.cwiseAbs().maxCoeff();
        if (norm < 1e-14) return;  // 0 <= h with h >= 0
        if (prune && box.max_of(r) <= h) return;
        const RowVector6d rn = r / norm;
        const double hn = h / norm;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const double ni = rows[i].cwiseAbs().maxCoeff();
            if ((rows[i] / ni - rn).cwiseAbs().maxCoeff() < 1e-12) {
                if (rhs[i] / ni > hn) {  // keep the tighter of the two
                    rows[i] = rn;
                    rhs[i] = hn;
                }
                return;
            }
        }
        rows.push_back(rn);
        rhs.push_back(hn);
    }

    LpProblem lp_for(const RowVector6d& objective) const {
        LpProblem p;
        const int m = static_cast<int>(rows.size());
        p.c = objective.transpose();
        p.A_ub.resize(m, 6);
        p.b_ub.resize(m);
        for (int i = 0; i < m; ++i) {
            p.A_ub.row(i) = rows[i];
            p.b_ub(i) = rhs[i];
        }
        return p;
    }
};

}  // namespace

MpiResult compute_horizon_bound(const AugmentedSystem& aug, int n_max) {
    if (n_max < 1) throw std::invalid_argument("compute_horizon_bound: n_max >= 1");

    const Matrix6d Acl = aug.Atil + aug.Btil * aug.Ktil;
    const Eigen::Matrix<double, 18, 6> FK = aug.Ftil + aug.Gtil * aug.Ktil;
    const OuterBox box(aug);

    Polytope poly;
    for (int j = 0; j < 18; ++j)
        poly.add(FK.row(j), aug.htil(j), box, /*prune=*/false);

    Eigen::Matrix<double, 18, 6> pow = FK;
    int last_violated = -1;
    for (int n = 0; n <= n_max; ++n) {
        const Eigen::Matrix<double, 18, 6> next = pow * Acl;
        bool all_pass = true;
        for (int j = 0; j < 18; ++j) {
            const RowVector6d r = next.row(j);
            const double hj = aug.htil(j);
            if (box.max_of(r) <= hj) continue;  // certified without an LP
            const LpOutcome res = solve_lp(poly.lp_for(r));
            if (res.status == LpStatus::Unbounded)
                throw std::runtime_error(
                    "compute_horizon_bound: unbounded LP (malformed constraint set)");
            if (res.status == LpStatus::Infeasible)
                throw std::runtime_error(
                    "compute_horizon_bound: infeasible constraint set");
            if (res.value > hj + 1e-7) {
                all_pass = false;
                last_violated = j;
                break;
            }
        }
        if (all_pass) {
            MpiResult out;
            out.n_nu = n;
            out.n_bar_offset = n + 1;
            out.rows_checked = 18;
            return out;
        }
        for (int j = 0; j < 18; ++j)
            poly.add(next.row(j), aug.htil(j), box, /*prune=*/true);
        pow = next;
    }
    std::ostringstream os;
    os << "compute_horizon_bound: cap " << n_max
       << " exceeded, last violated row " << last_violated;
    throw std::runtime_error(os.str());
}

bool mpi_contains(const AugmentedSystem& aug, int n_nu, const Vector6d& xtil,
                  double tol) {
    const Matrix6d Acl = aug.Atil + aug.Btil * aug.Ktil;
    const Eigen::Matrix<double, 18, 6> FK = aug.Ftil + aug.Gtil * aug.Ktil;
    Vector6d x = xtil;
    for (int i = 0; i <= n_nu; ++i) {
        if (((FK * x - aug.htil).array() > tol).any()) return false;
        x = Acl * x;
    }
    return true;
}

std::vector<std::pair<double, double>> project_polytope_2d(const AugmentedSystem& aug,
                                                           int n_nu, int dim_a,
                                                           int dim_b, int grid) {
    if (dim_a == dim_b || dim_a < 0 || dim_b < 0 || dim_a > 5 || dim_b > 5)
        throw std::invalid_argument("project_polytope_2d: bad dimensions");
    if (grid < 2) throw std::invalid_argument("project_polytope_2d: grid too small");

    const OuterBox box(aug);
    const int g = grid | 1;  // odd count keeps 0 on the lattice
    auto axis = [&](int dim) {
        std::vector<double> v(g);
        for (int i = 0; i < g; ++i)
            v[i] = box.lo(dim) + (box.hi(dim) - box.lo(dim)) * i / (g - 1);
        return v;
    };

    std::vector<std::pair<double, double>> pts;
    for (double a : axis(dim_a)) {
        for (double b : axis(dim_b)) {
            Vector6d x = Vector6d::Zero();
            x(dim_a) = a;
            x(dim_b) = b;
            if (mpi_contains(aug, n_nu, x)) pts.emplace_back(a, b);
        }
    }
    return pts;
}

HorizonCache::HorizonCache(std::string path) : path_(std::move(path)) {}

std::string HorizonCache::key_of(const AugmentedSystem& aug) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&h](const double* p, std::size_t n) {
        for (std::size_t i = 0; i < n * sizeof(double); ++i) {
            h ^= reinterpret_cast<const unsigned char*>(p)[i];
            h *= 1099511628211ull;
        }
    };
    mix(aug.Atil.data(), 36);
    mix(aug.Btil.data(), 6);
    mix(aug.Ktil.data(), 6);
    mix(aug.Ftil.data(), 108);
    mix(aug.Gtil.data(), 18);
    mix(aug.htil.data(), 18);
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

bool HorizonCache::lookup(const AugmentedSystem& aug, int* n_nu) const {
    std::ifstream in(path_);
    if (!in) return false;
    const std::string key = key_of(aug);
    std::string k;
    int v;
    bool found = false;
    while (in >> k >> v) {
        if (k == key) {
            *n_nu = v;
            found = true;  // last entry wins
        }
    }
    return found;
}

void HorizonCache::store(const AugmentedSystem& aug, int n_nu) const {
    int existing;
    if (lookup(aug, &existing) && existing == n_nu) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("HorizonCache: cannot open " + path_);
    out << key_of(aug) << " " << n_nu << "\n";
}

}  // namespace softcilqr
