// Infeasible primal-dual path-following method for block-diagonal SDPs,
// HKM search direction with a Mehrotra predictor-corrector step.
#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "flagbound/error.hpp"
#include "flagbound/sdp.hpp"

namespace flagbound {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

const double kSqrt2 = std::sqrt(2.0);

int svec_index(int i, int j) { return j * (j + 1) / 2 + i; }  // i <= j

VectorXd svec(const MatrixXd& a) {
  const auto n = static_cast<int>(a.rows());
  VectorXd v(n * (n + 1) / 2);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) v[svec_index(i, j)] = kSqrt2 * 0.5 * (a(i, j) + a(j, i));
    v[svec_index(j, j)] = a(j, j);
  }
  return v;
}

MatrixXd smat(const VectorXd& v, int n) {
  MatrixXd a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) a(i, j) = a(j, i) = v[svec_index(i, j)] / kSqrt2;
    a(j, j) = v[svec_index(j, j)];
  }
  return a;
}

MatrixXd sym(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }

struct Block {
  bool diagonal = false;
  int n = 0;
  SparseRows a;  // m x svec length (dense) or m x n (diagonal)
  VectorXd c;    // cost in the same coordinates
  // Per constraint: rows/cols touched, as a local dense matrix.
  std::vector<std::vector<int>> support;
  std::vector<MatrixXd> local;
};

struct Iterate {
  std::vector<MatrixXd> x;  // dense blocks; diagonal blocks as n x 1
  std::vector<MatrixXd> z;
  VectorXd y;
};

class Solver {
 public:
  Solver(const SdpData& data, const SolverOptions& options) : options_(options) {
    m_ = static_cast<int>(data.objective.size());
    b_ = VectorXd(m_);
    for (int i = 0; i < m_; ++i) b_[i] = data.objective[static_cast<std::size_t>(i)];

    blocks_.resize(data.block_sizes.size());
    std::vector<std::vector<Eigen::Triplet<double>>> triplets(blocks_.size());
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      auto& blk = blocks_[k];
      blk.diagonal = data.block_sizes[k] < 0;
      blk.n = std::abs(data.block_sizes[k]);
      blk.c = VectorXd::Zero(blk.diagonal ? blk.n : blk.n * (blk.n + 1) / 2);
      if (!blk.diagonal) blk.support.resize(static_cast<std::size_t>(m_));
    }
    for (const auto& e : data.entries) {
      auto& blk = blocks_[static_cast<std::size_t>(e.block)];
      const int col = blk.diagonal ? e.i : svec_index(e.i, e.j);
      const double v = (!blk.diagonal && e.i != e.j) ? kSqrt2 * e.value : e.value;
      if (e.matrix == 0) {
        // Minimization form: cost is -F0.
        blk.c[col] -= v;
      } else {
        triplets[static_cast<std::size_t>(e.block)].emplace_back(e.matrix - 1, col, v);
        if (!blk.diagonal) {
          auto& s = blk.support[static_cast<std::size_t>(e.matrix - 1)];
          s.push_back(e.i);
          s.push_back(e.j);
        }
      }
    }
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      auto& blk = blocks_[k];
      blk.a.resize(m_, blk.c.size());
      blk.a.setFromTriplets(triplets[k].begin(), triplets[k].end());
      blk.a.makeCompressed();
      if (blk.diagonal) continue;
      blk.local.resize(static_cast<std::size_t>(m_));
      for (int i = 0; i < m_; ++i) {
        auto& s = blk.support[static_cast<std::size_t>(i)];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        const MatrixXd full = smat(row(blk.a, i), blk.n);
        MatrixXd loc(s.size(), s.size());
        for (std::size_t p = 0; p < s.size(); ++p) {
          for (std::size_t q = 0; q < s.size(); ++q) loc(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = full(s[p], s[q]);
        }
        blk.local[static_cast<std::size_t>(i)] = std::move(loc);
      }
    }
    for (const auto& blk : blocks_) total_dim_ += blk.n;
  }

  SdpaResult run() {
    Iterate it = start();
    SdpaResult result;
    double best_error = std::numeric_limits<double>::infinity();
    double stall_reference = best_error;
    int stalled = 0;
    const double b_norm = 1 + b_.norm();
    double c_norm = 1;
    for (const auto& blk : blocks_) c_norm += blk.c.squaredNorm();
    c_norm = std::sqrt(c_norm);

    for (int iter = 0; iter <= options_.max_iterations; ++iter) {
      const VectorXd rp = b_ - apply_a(it.x);
      std::vector<MatrixXd> rd = dual_residual(it);
      double rd_norm = 0;
      for (std::size_t k = 0; k < blocks_.size(); ++k) rd_norm += rd[k].squaredNorm();
      rd_norm = std::sqrt(rd_norm);
      const double pobj = primal_objective(it.x);
      const double dobj = b_.dot(it.y);
      const double mu = complementarity(it.x, it.z) / total_dim_;
      const double gap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));
      const double pinf = rp.norm() / b_norm;
      const double dinf = rd_norm / c_norm;
      const double error = std::max({gap, pinf, dinf});
      if (options_.verbose) {
        std::cerr << "ipm " << iter << " pobj " << pobj << " dobj " << dobj << " gap " << gap << " pinf " << pinf
                  << " dinf " << dinf << "\n";
      }
      if (error < best_error) {
        best_error = error;
        result = snapshot(it, pobj, dobj, iter);
      }
      if (error <= options_.tolerance || iter == options_.max_iterations) break;
      // Near-converged iterates sometimes creep along the boundary; stop once
      // the residual is small and has not halved in eight iterations.
      if (best_error < 0.5 * stall_reference) {
        stall_reference = best_error;
        stalled = 0;
      } else if (++stalled >= 8 && best_error <= 1e-6) {
        break;
      }

      std::vector<MatrixXd> zinv = inverses(it.z);
      MatrixXd schur = schur_complement(it.x, zinv);
      Eigen::LLT<MatrixXd> factor(schur);
      for (double shift = 1e-14; factor.info() != Eigen::Success && shift < 1e-6; shift *= 100) {
        factor.compute(schur + shift * schur.diagonal().cwiseAbs().maxCoeff() * MatrixXd::Identity(m_, m_));
      }
      if (factor.info() != Eigen::Success) break;

      // Predictor.
      std::vector<MatrixXd> g(blocks_.size());
      for (std::size_t k = 0; k < blocks_.size(); ++k) g[k] = -it.x[k];
      Direction pred = direction(it, zinv, rp, rd, g, factor);
      const double ap = std::min(1.0, max_step(it.x, pred.dx));
      const double ad = std::min(1.0, max_step(it.z, pred.dz));
      double mu_aff = 0;
      for (std::size_t k = 0; k < blocks_.size(); ++k) {
        mu_aff += inner(it.x[k] + ap * pred.dx[k], it.z[k] + ad * pred.dz[k], blocks_[k].diagonal);
      }
      mu_aff /= total_dim_;
      const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

      // Corrector.
      for (std::size_t k = 0; k < blocks_.size(); ++k) {
        if (blocks_[k].diagonal) {
          g[k] = ((sigma * mu) - pred.dx[k].array() * pred.dz[k].array()) / it.z[k].array() - it.x[k].array();
        } else {
          g[k] = sigma * mu * zinv[k] - it.x[k] - pred.dx[k] * pred.dz[k] * zinv[k];
        }
      }
      Direction corr = direction(it, zinv, rp, rd, g, factor);
      const double gamma = 0.95;
      const double sp = std::min(1.0, gamma * max_step(it.x, corr.dx));
      const double sd = std::min(1.0, gamma * max_step(it.z, corr.dz));
      if (sp < 1e-10 && sd < 1e-10) break;
      for (std::size_t k = 0; k < blocks_.size(); ++k) {
        it.x[k] += sp * corr.dx[k];
        it.z[k] += sd * corr.dz[k];
      }
      it.y += sd * corr.dy;
    }
    if (best_error > std::max(options_.tolerance, 1e-6)) {
      throw Error(ErrorKind::SolverFailure, "interior point method did not converge (residual " +
                                                std::to_string(best_error) + ")");
    }
    return result;
  }

 private:
  struct Direction {
    std::vector<MatrixXd> dx;
    std::vector<MatrixXd> dz;
    VectorXd dy;
  };

  static VectorXd row(const SparseRows& a, int i) {
    VectorXd v = VectorXd::Zero(a.cols());
    for (SparseRows::InnerIterator itr(a, i); itr; ++itr) v[itr.col()] = itr.value();
    return v;
  }

  static double inner(const MatrixXd& a, const MatrixXd& b, bool /*diagonal*/) { return (a.array() * b.array()).sum(); }

  Iterate start() const {
    Iterate it;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      const auto& blk = blocks_[k];
      const double n = blk.n;
      double xi = std::max(10.0, std::sqrt(n));
      double eta = std::max({10.0, std::sqrt(n), blk.c.norm()});
      for (int i = 0; i < m_; ++i) {
        const double norm = blk.a.row(i).norm();
        xi = std::max(xi, n * (1 + std::abs(b_[i])) / (1 + norm));
        eta = std::max(eta, norm);
      }
      if (blk.diagonal) {
        it.x.push_back(MatrixXd::Constant(blk.n, 1, xi));
        it.z.push_back(MatrixXd::Constant(blk.n, 1, eta));
      } else {
        it.x.push_back(xi * MatrixXd::Identity(blk.n, blk.n));
        it.z.push_back(eta * MatrixXd::Identity(blk.n, blk.n));
      }
    }
    it.y = VectorXd::Zero(m_);
    return it;
  }

  VectorXd coords(const MatrixXd& v, const Block& blk) const { return blk.diagonal ? VectorXd(v.col(0)) : svec(v); }

  VectorXd apply_a(const std::vector<MatrixXd>& v) const {
    VectorXd out = VectorXd::Zero(m_);
    for (std::size_t k = 0; k < blocks_.size(); ++k) out += blocks_[k].a * coords(v[k], blocks_[k]);
    return out;
  }

  std::vector<MatrixXd> apply_at(const VectorXd& y) const {
    std::vector<MatrixXd> out;
    for (const auto& blk : blocks_) {
      VectorXd v = blk.a.transpose() * y;
      out.push_back(blk.diagonal ? MatrixXd(v) : smat(v, blk.n));
    }
    return out;
  }

  std::vector<MatrixXd> dual_residual(const Iterate& it) const {
    std::vector<MatrixXd> at = apply_at(it.y);
    std::vector<MatrixXd> rd;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      const auto& blk = blocks_[k];
      MatrixXd c = blk.diagonal ? MatrixXd(blk.c) : smat(blk.c, blk.n);
      rd.push_back(c - at[k] - it.z[k]);
    }
    return rd;
  }

  double primal_objective(const std::vector<MatrixXd>& x) const {
    double sum = 0;
    for (std::size_t k = 0; k < blocks_.size(); ++k) sum += blocks_[k].c.dot(coords(x[k], blocks_[k]));
    return sum;
  }

  double complementarity(const std::vector<MatrixXd>& x, const std::vector<MatrixXd>& z) const {
    double sum = 0;
    for (std::size_t k = 0; k < blocks_.size(); ++k) sum += inner(x[k], z[k], blocks_[k].diagonal);
    return sum;
  }

  std::vector<MatrixXd> inverses(const std::vector<MatrixXd>& z) const {
    std::vector<MatrixXd> out;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      if (blocks_[k].diagonal) {
        out.push_back(z[k].cwiseInverse());
      } else {
        Eigen::LLT<MatrixXd> llt(z[k]);
        out.push_back(sym(llt.solve(MatrixXd::Identity(z[k].rows(), z[k].cols()))));
      }
    }
    return out;
  }

  // M_ij = <A_i, X A_j Z^-1>, summed over blocks.
  MatrixXd schur_complement(const std::vector<MatrixXd>& x, const std::vector<MatrixXd>& zinv) const {
    MatrixXd schur = MatrixXd::Zero(m_, m_);
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      const auto& blk = blocks_[k];
      if (blk.diagonal) {
        const VectorXd d = x[k].col(0).cwiseProduct(zinv[k].col(0));
        const Eigen::SparseMatrix<double> cols = blk.a;  // column-major copy
        for (int c = 0; c < cols.outerSize(); ++c) {
          std::vector<std::pair<int, double>> nz;
          for (Eigen::SparseMatrix<double>::InnerIterator itr(cols, c); itr; ++itr) nz.emplace_back(static_cast<int>(itr.row()), itr.value());
          for (auto [i, vi] : nz) {
            for (auto [j, vj] : nz) schur(i, j) += d[c] * vi * vj;
          }
        }
        continue;
      }
      for (int j = 0; j < m_; ++j) {
        const auto& s = blk.support[static_cast<std::size_t>(j)];
        if (s.empty()) continue;
        const auto ks = static_cast<Eigen::Index>(s.size());
        MatrixXd xs(blk.n, ks);
        MatrixXd zs(ks, blk.n);
        for (Eigen::Index p = 0; p < ks; ++p) {
          xs.col(p) = x[k].col(s[static_cast<std::size_t>(p)]);
          zs.row(p) = zinv[k].row(s[static_cast<std::size_t>(p)]);
        }
        const MatrixXd prod = xs * (blk.local[static_cast<std::size_t>(j)] * zs);
        schur.col(j) += blk.a * svec(prod);
      }
    }
    return sym(schur);
  }

  Direction direction(const Iterate& it, const std::vector<MatrixXd>& zinv, const VectorXd& rp,
                      const std::vector<MatrixXd>& rd, const std::vector<MatrixXd>& g, const Eigen::LLT<MatrixXd>& factor) const {
    std::vector<MatrixXd> t(blocks_.size());
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      if (blocks_[k].diagonal) {
        t[k] = it.x[k].array() * rd[k].array() * zinv[k].array() - g[k].array();
      } else {
        t[k] = sym(it.x[k] * rd[k] * zinv[k]) - sym(g[k]);
      }
    }
    Direction d;
    d.dy = factor.solve(rp + apply_a(t));
    std::vector<MatrixXd> at = apply_at(d.dy);
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      MatrixXd dz = rd[k] - at[k];
      MatrixXd dx;
      if (blocks_[k].diagonal) {
        dx = g[k].array() - it.x[k].array() * dz.array() * zinv[k].array();
      } else {
        dx = sym(g[k] - it.x[k] * dz * zinv[k]);
      }
      d.dx.push_back(std::move(dx));
      d.dz.push_back(std::move(dz));
    }
    return d;
  }

  double max_step(const std::vector<MatrixXd>& v, const std::vector<MatrixXd>& dv) const {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      if (blocks_[k].diagonal) {
        for (Eigen::Index i = 0; i < v[k].rows(); ++i) {
          if (dv[k](i, 0) < 0) alpha = std::min(alpha, -v[k](i, 0) / dv[k](i, 0));
        }
        continue;
      }
      Eigen::LLT<MatrixXd> llt(v[k]);
      if (llt.info() != Eigen::Success) return 0;
      const auto l = llt.matrixL();
      MatrixXd s = l.solve(dv[k]);
      s = l.solve(s.transpose()).transpose();
      Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym(s), Eigen::EigenvaluesOnly);
      const double lo = eig.eigenvalues().minCoeff();
      if (lo < 0) alpha = std::min(alpha, -1.0 / lo);
    }
    return alpha;
  }

  SdpaResult snapshot(const Iterate& it, double pobj, double dobj, int iter) const {
    SdpaResult r;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      const auto& blk = blocks_[k];
      FloatMatrix m(static_cast<std::size_t>(blk.n), std::vector<double>(static_cast<std::size_t>(blk.n), 0.0));
      for (int i = 0; i < blk.n; ++i) {
        if (blk.diagonal) {
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = it.x[k](i, 0);
          continue;
        }
        for (int j = 0; j < blk.n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = it.x[k](i, j);
      }
      r.x.push_back(std::move(m));
    }
    r.y.assign(it.y.data(), it.y.data() + it.y.size());
    // Report in the maximization form of the interchange layout.
    r.primal_objective = -pobj;
    r.dual_objective = -dobj;
    r.iterations = iter;
    return r;
  }

  SolverOptions options_;
  int m_ = 0;
  VectorXd b_;
  std::vector<Block> blocks_;
  double total_dim_ = 0;
};

}  // namespace

SdpaResult solve_sdpa(const SdpData& data, const SolverOptions& options) {
  if (data.objective.empty()) throw Error(ErrorKind::DegenerateInput, "SDP has no constraints");
  return Solver(data, options).run();
}

SdpSolution solve_embedded(const SDPProblem& problem, const SolverOptions& options) {
  const std::size_t dim = problem.psd_dimension();
  if (dim > options.psd_cap) {
    throw Error(ErrorKind::ResourceLimit, "total PSD dimension " + std::to_string(dim) + " exceeds the embedded solver cap " +
                                              std::to_string(options.psd_cap) + "; export the problem for an external solver");
  }
  const SdpaResult r = solve_sdpa(to_sdpa(problem), options);
  SdpSolution sol;
  std::size_t block = 0;
  for (const auto& s : problem.specs) {
    sol.blocks.emplace_back();
    for (std::size_t k = 0; k < s.tensor.block_sizes.size(); ++k) sol.blocks.back().push_back(r.x[block++]);
  }
  const auto& diag = r.x[block];
  for (std::size_t i = 0; i < diag.size(); ++i) sol.slack.push_back(diag[i][i]);
  sol.dual = r.y;
  sol.bound = sol.slack.back();
  sol.gap = std::abs(r.primal_objective - r.dual_objective);
  sol.iterations = r.iterations;
  return sol;
}

}  // namespace flagbound
