#include "vimod/planes.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "vimod/errors.hpp"

namespace vimod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Transfer distance without exceptions; returns +inf past infinity.
double transfer_distance(const Eigen::Matrix3d& m, const Eigen::Vector2d& p,
                         const Eigen::Vector2d& q) {
  const double w = m(2, 0) * p.x() + m(2, 1) * p.y() + m(2, 2);
  if (std::abs(w) <= 1e-12) {
    return kInf;
  }
  const double x = (m(0, 0) * p.x() + m(0, 1) * p.y() + m(0, 2)) / w;
  const double y = (m(1, 0) * p.x() + m(1, 1) * p.y() + m(1, 2)) / w;
  return std::hypot(x - q.x(), y - q.y());
}

bool collinear(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
               const Eigen::Vector2d& c) {
  const Eigen::Vector2d u = b - a;
  const Eigen::Vector2d v = c - a;
  const double cross = u.x() * v.y() - u.y() * v.x();
  return std::abs(cross) <= 1e-9 * (u.norm() * v.norm() + 1e-12);
}

bool degenerate_sample(const std::vector<Eigen::Vector2d>& pts, const int idx[4]) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if ((pts[idx[i]] - pts[idx[j]]).norm() < 1e-9) {
        return true;
      }
    }
  }
  for (int skip = 0; skip < 4; ++skip) {
    Eigen::Vector2d tri[3];
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) {
        tri[k++] = pts[idx[i]];
      }
    }
    if (collinear(tri[0], tri[1], tri[2])) {
      return true;
    }
  }
  return false;
}

struct Similarity {
  Eigen::Matrix3d t;
};

Similarity normalizing_transform(const std::vector<Eigen::Vector2d>& pts,
                                 const int* idx, int n) {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (int i = 0; i < n; ++i) {
    mean += pts[idx ? idx[i] : i];
  }
  mean /= n;
  double dist = 0.0;
  for (int i = 0; i < n; ++i) {
    dist += (pts[idx ? idx[i] : i] - mean).norm();
  }
  dist /= n;
  const double s = dist > 1e-12 ? std::sqrt(2.0) / dist : 1.0;
  Similarity sim;
  sim.t << s, 0.0, -s * mean.x(), 0.0, s, -s * mean.y(), 0.0, 0.0, 1.0;
  return sim;
}

Homography dlt_impl(const std::vector<Eigen::Vector2d>& prev,
                    const std::vector<Eigen::Vector2d>& cur, const int* idx,
                    int n) {
  const Similarity t1 = normalizing_transform(prev, idx, n);
  const Similarity t2 = normalizing_transform(cur, idx, n);
  Eigen::MatrixXd a(2 * n, 9);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d& p0 = prev[idx ? idx[i] : i];
    const Eigen::Vector2d& q0 = cur[idx ? idx[i] : i];
    const Eigen::Vector3d p = t1.t * Eigen::Vector3d(p0.x(), p0.y(), 1.0);
    const Eigen::Vector3d q = t2.t * Eigen::Vector3d(q0.x(), q0.y(), 1.0);
    a.row(2 * i) << -p.x(), -p.y(), -1.0, 0.0, 0.0, 0.0, q.x() * p.x(),
        q.x() * p.y(), q.x();
    a.row(2 * i + 1) << 0.0, 0.0, 0.0, -p.x(), -p.y(), -1.0, q.y() * p.x(),
        q.y() * p.y(), q.y();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd h = svd.matrixV().col(8);
  Eigen::Matrix3d hm;
  hm << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
  const Eigen::Matrix3d denorm = t2.t.inverse() * hm * t1.t;
  return normalize(Homography{denorm});
}

}  // namespace

CorrespondenceSet correspondences_from_flow(const SampleGrid& grid,
                                            const FlowField& flow) {
  if (grid.points.size() != flow.size()) {
    throw SizeMismatch("flow field does not match sample grid");
  }
  CorrespondenceSet c;
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (!flow.tracked[i]) {
      continue;
    }
    c.prev.push_back(grid.points[i]);
    c.cur.push_back(grid.points[i] + flow.d[i].cast<double>());
  }
  return c;
}

double symmetric_transfer_error(const Homography& h, const Homography& h_inv,
                                const Eigen::Vector2d& p,
                                const Eigen::Vector2d& q) {
  return 0.5 * (transfer_distance(h.m, p, q) + transfer_distance(h_inv.m, q, p));
}

Homography fit_homography_dlt(const std::vector<Eigen::Vector2d>& prev,
                              const std::vector<Eigen::Vector2d>& cur) {
  if (prev.size() != cur.size()) {
    throw SizeMismatch("correspondence lists differ in length");
  }
  if (prev.size() < 4) {
    throw InsufficientCorrespondences("DLT needs at least 4 pairs");
  }
  return dlt_impl(prev, cur, nullptr, static_cast<int>(prev.size()));
}

RansacResult ransac_homography(const CorrespondenceSet& c, double threshold,
                               int max_iters, std::uint64_t seed,
                               int min_consensus) {
  const int n = static_cast<int>(c.size());
  if (n < 4) {
    throw InsufficientCorrespondences("RANSAC needs at least 4 pairs");
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);

  std::vector<int> best_inliers;
  Eigen::Matrix3d best_m = Eigen::Matrix3d::Identity();
  int required = std::max(min_consensus, (n + 9) / 10);
  int iter_budget = max_iters;

  std::vector<int> candidate;
  candidate.reserve(n);
  for (int iter = 0; iter < iter_budget; ++iter) {
    int idx[4];
    bool distinct = false;
    for (int attempt = 0; attempt < 16 && !distinct; ++attempt) {
      for (int& v : idx) {
        v = pick(rng);
      }
      distinct = idx[0] != idx[1] && idx[0] != idx[2] && idx[0] != idx[3] &&
                 idx[1] != idx[2] && idx[1] != idx[3] && idx[2] != idx[3];
    }
    if (!distinct || degenerate_sample(c.prev, idx) ||
        degenerate_sample(c.cur, idx)) {
      continue;
    }
    Eigen::Matrix3d m;
    Eigen::Matrix3d m_inv;
    try {
      const Homography h = dlt_impl(c.prev, c.cur, idx, 4);
      m = h.m;
      m_inv = invert(h).m;
    } catch (const Error&) {
      continue;
    }

    candidate.clear();
    for (int i = 0; i < n; ++i) {
      const double fwd = transfer_distance(m, c.prev[i], c.cur[i]);
      const double bwd = transfer_distance(m_inv, c.cur[i], c.prev[i]);
      if (0.5 * (fwd + bwd) < threshold) {
        candidate.push_back(i);
      }
    }
    if (candidate.size() > best_inliers.size()) {
      best_inliers = candidate;
      best_m = m;
      // Standard adaptive stop: enough iterations for 99% confidence at the
      // current inlier rate.
      const double w = static_cast<double>(best_inliers.size()) / n;
      const double p_good = std::pow(w, 4);
      if (p_good > 1e-9 && p_good < 1.0) {
        const int needed = static_cast<int>(
            std::ceil(std::log(0.01) / std::log(1.0 - p_good)));
        iter_budget = std::min(max_iters, std::max(iter + 1, needed));
      } else if (p_good >= 1.0) {
        iter_budget = iter + 1;
      }
    }
  }

  if (static_cast<int>(best_inliers.size()) < required) {
    throw NoConsensus("best consensus " + std::to_string(best_inliers.size()) +
                      " below required " + std::to_string(required));
  }

  Homography refit = dlt_impl(c.prev, c.cur, best_inliers.data(),
                              static_cast<int>(best_inliers.size()));
  const Homography refit_inv = invert(refit);

  RansacResult res;
  res.h = refit;
  for (int i = 0; i < n; ++i) {
    if (symmetric_transfer_error(refit, refit_inv, c.prev[i], c.cur[i]) <
        threshold) {
      res.inliers.push_back(i);
    }
  }
  if (static_cast<int>(res.inliers.size()) < required) {
    // Refit degraded the consensus; keep the hypothesis-stage model.
    res.h = normalize(Homography{best_m});
    res.inliers = best_inliers;
  }
  return res;
}

Homography inertial_ground_homography(const PoseSample& pose_prev,
                                      const PoseSample& pose_cur,
                                      const CameraModel& cam,
                                      const PlaneModel& plane) {
  if (!is_rotation(pose_prev.r_cam) || !is_rotation(pose_cur.r_cam)) {
    throw InvalidPose("rotation is not orthonormal within 1e-6");
  }
  if (!(pose_prev.height > 0.0) || !std::isfinite(pose_prev.height)) {
    throw InvalidPose("camera height must be positive");
  }
  if (std::abs(plane.n.norm() - 1.0) > 1e-6) {
    throw InvalidPose("plane normal must be unit length");
  }
  const Eigen::Matrix3d r_rel = pose_cur.r_cam * pose_prev.r_cam.transpose();
  const Eigen::Vector3d t_rel =
      pose_prev.r_cam * (pose_prev.t_cam - pose_cur.t_cam);
  const Eigen::Vector3d n_prev = pose_prev.r_cam * plane.n;
  const Eigen::Matrix3d inner =
      Eigen::Matrix3d::Identity() +
      (t_rel * n_prev.transpose()) / pose_prev.height;
  const Eigen::Matrix3d k = cam.matrix();
  return normalize(Homography{k * (r_rel * inner) * k.inverse()});
}

PlaneSplit split_planes(const CorrespondenceSet& c, const Homography& ground_h,
                        const PipelineConfig& cfg, std::uint64_t seed,
                        bool fit_front) {
  PlaneSplit split;
  split.ground_h = ground_h;
  const Homography ground_inv = invert(ground_h);

  const int n = static_cast<int>(c.size());
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (symmetric_transfer_error(ground_h, ground_inv, c.prev[i], c.cur[i]) <
        cfg.ransac_threshold) {
      split.ground_inliers.push_back(i);
    } else {
      rest.push_back(i);
    }
  }
  split.outlier_ratio =
      split.ground_inliers.empty()
          ? kInf
          : static_cast<double>(rest.size()) / split.ground_inliers.size();

  if (fit_front && static_cast<int>(rest.size()) >= cfg.min_front_inliers) {
    CorrespondenceSet sub;
    for (int i : rest) {
      sub.prev.push_back(c.prev[i]);
      sub.cur.push_back(c.cur[i]);
    }
    try {
      const RansacResult front =
          ransac_homography(sub, cfg.ransac_threshold, cfg.ransac_max_iters,
                            seed, cfg.min_front_inliers);
      split.front_h = front.h;
      std::vector<std::uint8_t> taken(rest.size(), 0);
      for (int j : front.inliers) {
        taken[j] = 1;
      }
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (taken[j]) {
          split.front_inliers.push_back(rest[j]);
        } else {
          split.residual_outliers.push_back(rest[j]);
        }
      }
      return split;
    } catch (const NoConsensus&) {
    } catch (const InsufficientCorrespondences&) {
    } catch (const DegenerateHomography&) {
    }
  }
  split.residual_outliers = std::move(rest);
  return split;
}

}  // namespace vimod
