#include "coarsen/losses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "coarsen/operators.hpp"
#include "coarsen/rng.hpp"
#include "coarsen/spectral.hpp"

namespace coarsen {

std::string loss_name(LossKind k) {
  switch (k) {
    case LossKind::QuadraticCombinatorial: return "quad";
    case LossKind::QuadraticNormalized: return "quad_norm";
    case LossKind::Rayleigh: return "rayleigh";
    case LossKind::Conductance: return "conductance";
    case LossKind::Eigenerror: return "eigenerror";
  }
  throw std::logic_error("loss_name: bad enum");
}

LossKind parse_loss(const std::string& name) {
  if (name == "quad") return LossKind::QuadraticCombinatorial;
  if (name == "quad_norm") return LossKind::QuadraticNormalized;
  if (name == "rayleigh") return LossKind::Rayleigh;
  if (name == "conductance") return LossKind::Conductance;
  if (name == "eigenerror") return LossKind::Eigenerror;
  throw std::invalid_argument("unknown loss '" + name + "'");
}

namespace {

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

std::vector<int> sample_subset(const WeightedGraph& g, Rng rng) {
  const int lo = std::max(1, g.n / 4);
  const int hi = std::min(g.n - 1, std::max(lo, g.n / 2));
  const int size = rng.uniform_int(lo, hi);
  std::vector<int> s = rng.sample_without_replacement(g.n, size);
  std::sort(s.begin(), s.end());
  return s;
}

/// Clusters touched by S; the coarse image of the subset.
std::vector<char> coarse_image(const Partition& p,
                               const std::vector<int>& subset) {
  std::vector<char> hit(p.n_coarse, 0);
  for (int v : subset) hit[p.assign[v]] = 1;
  return hit;
}

bool image_is_everything(const std::vector<char>& hit) {
  for (char h : hit)
    if (!h) return false;
  return true;
}

}  // namespace

TestVectors make_test_vectors(const WeightedGraph& g, const LossSpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("test vectors: k must be >= 1");
  TestVectors tv;
  switch (spec.kind) {
    case LossKind::QuadraticCombinatorial:
    case LossKind::Rayleigh:
    case LossKind::Eigenerror: {
      if (spec.k > g.n)
        throw std::invalid_argument("test vectors: k exceeds graph size");
      tv.provenance = TestVectors::Provenance::EigenvectorsCombinatorial;
      tv.vectors =
          eigen_smallest_k(laplacian(g, OperatorKind::Combinatorial), spec.k)
              .eigenvectors;
      break;
    }
    case LossKind::QuadraticNormalized: {
      if (spec.k > g.n)
        throw std::invalid_argument("test vectors: k exceeds graph size");
      tv.provenance = TestVectors::Provenance::EigenvectorsNormalized;
      tv.vectors =
          eigen_smallest_k(laplacian(g, OperatorKind::Normalized), spec.k)
              .eigenvectors;
      break;
    }
    case LossKind::Conductance: {
      if (g.n < 2)
        throw std::invalid_argument("test vectors: graph too small");
      Rng root(spec.seed);
      tv.provenance = TestVectors::Provenance::SampledSubsets;
      tv.vectors = Mat::Zero(g.n, spec.k);
      for (int i = 0; i < spec.k; ++i) {
        const std::vector<int> s = sample_subset(g, root.child(i));
        for (int v : s) tv.vectors(v, i) = 1.0;
      }
      break;
    }
  }
  return tv;
}

LossPlan LossPlan::build(const WeightedGraph& g, const CoarseningResult& result,
                         const LossSpec& spec, const TestVectors& tv) {
  if (tv.vectors.rows() != g.n || tv.vectors.cols() != spec.k)
    throw std::invalid_argument("loss: test vector shape mismatch");
  if (result.partition.n != g.n)
    throw std::invalid_argument("loss: partition does not match graph");

  const Partition& p = result.partition;
  const WeightedGraph& coarse = result.coarse;
  LossPlan plan;
  plan.kind_ = spec.kind;
  plan.k_ = spec.k;
  plan.num_weights_ = coarse.num_edges();

  switch (spec.kind) {
    case LossKind::QuadraticCombinatorial:
    case LossKind::QuadraticNormalized: {
      const bool normalized = spec.kind == LossKind::QuadraticNormalized;
      const SpMat L = laplacian(
          g, normalized ? OperatorKind::Normalized : OperatorKind::Combinatorial);
      Vec inv_sqrt_d;
      if (normalized) {
        inv_sqrt_d = g.weighted_degrees().cwiseSqrt().cwiseInverse();
      }
      plan.targets_.resize(spec.k);
      plan.coef_.resize(spec.k, plan.num_weights_);
      for (int i = 0; i < spec.k; ++i) {
        const Vec f = tv.vectors.col(i);
        plan.targets_[i] = quadratic_form(L, f);
        // Degree prefactors of the projection cancel against the coarse
        // operator's own scaling, leaving the plain coarse quadratic form of
        // the cluster-mean vector.
        const Vec h = project_mean(
            p, normalized ? Vec(f.cwiseProduct(inv_sqrt_d)) : f);
        for (int e = 0; e < plan.num_weights_; ++e) {
          const auto& ce = coarse.edges[e];
          const double diff = h[ce.u] - h[ce.v];
          plan.coef_(i, e) = diff * diff;
        }
      }
      break;
    }
    case LossKind::Rayleigh: {
      const SpMat L = laplacian(g, OperatorKind::Combinatorial);
      plan.targets_.resize(spec.k);
      plan.coef_.resize(spec.k, plan.num_weights_);
      plan.denom_.resize(spec.k);
      for (int i = 0; i < spec.k; ++i) {
        const Vec f = tv.vectors.col(i);
        plan.targets_[i] = rayleigh_quotient(L, f);
        // proj = Gamma^{-1/2} P_plus^T; its squared norm is the denominator,
        // and Gamma^{-1/2} proj is the cluster-mean vector.
        Vec sums = Vec::Zero(p.n_coarse);
        for (int v = 0; v < p.n; ++v) sums[p.assign[v]] += f[v];
        double den = 0.0;
        Vec means(p.n_coarse);
        for (int r = 0; r < p.n_coarse; ++r) {
          const double gamma = static_cast<double>(p.cluster_sizes[r]);
          den += sums[r] * sums[r] / gamma;
          means[r] = sums[r] / gamma;
        }
        plan.denom_[i] = den;
        if (den <= 1e-30)
          std::fprintf(stderr,
                       "rayleigh loss: test vector %d projects to zero; "
                       "its term is skipped\n",
                       i);
        for (int e = 0; e < plan.num_weights_; ++e) {
          const auto& ce = coarse.edges[e];
          const double diff = means[ce.u] - means[ce.v];
          plan.coef_(i, e) = diff * diff;
        }
      }
      break;
    }
    case LossKind::Conductance: {
      if (tv.provenance != TestVectors::Provenance::SampledSubsets)
        throw std::invalid_argument(
            "conductance loss needs subset test vectors");
      plan.targets_.resize(spec.k);
      plan.cross_.resize(spec.k, plan.num_weights_);
      plan.cnt_in_.resize(spec.k, plan.num_weights_);
      plan.cnt_out_.resize(spec.k, plan.num_weights_);
      Rng root(spec.seed);
      for (int i = 0; i < spec.k; ++i) {
        std::vector<int> subset;
        for (int v = 0; v < g.n; ++v)
          if (tv.vectors(v, i) != 0.0) subset.push_back(v);
        // A subset whose image covers every cluster has no coarse
        // complement; draw a replacement from a dedicated stream.
        std::vector<char> image = coarse_image(p, subset);
        for (int attempt = 0; image_is_everything(image); ++attempt) {
          if (attempt >= 100)
            throw std::runtime_error(
                "conductance loss: could not sample a proper coarse subset");
          subset = sample_subset(g, root.child(100000 + 1000 * i + attempt));
          image = coarse_image(p, subset);
        }
        plan.targets_[i] = conductance(g, subset);
        for (int e = 0; e < plan.num_weights_; ++e) {
          const auto& ce = coarse.edges[e];
          const int in_count = (image[ce.u] ? 1 : 0) + (image[ce.v] ? 1 : 0);
          plan.cross_(i, e) = in_count == 1 ? 1.0 : 0.0;
          plan.cnt_in_(i, e) = static_cast<double>(in_count);
          plan.cnt_out_(i, e) = static_cast<double>(2 - in_count);
        }
      }
      break;
    }
    case LossKind::Eigenerror: {
      plan.eig_g_ = g;
      plan.eig_result_ = result;
      break;
    }
  }
  return plan;
}

double LossPlan::value(const Vec& w) const {
  if (w.size() != num_weights_)
    throw std::invalid_argument("loss: weight count mismatch");
  for (int e = 0; e < num_weights_; ++e)
    if (!std::isfinite(w[e]) || w[e] <= 0.0)
      throw std::invalid_argument("loss: weights must be finite and > 0");

  switch (kind_) {
    case LossKind::QuadraticCombinatorial:
    case LossKind::QuadraticNormalized: {
      const Vec b = coef_ * w;
      return (targets_ - b).cwiseAbs().sum() / static_cast<double>(k_);
    }
    case LossKind::Rayleigh: {
      const Vec b = coef_ * w;
      double acc = 0.0;
      for (int i = 0; i < k_; ++i) {
        if (denom_[i] <= 1e-30) continue;
        acc += std::abs(targets_[i] - b[i] / denom_[i]);
      }
      return acc / static_cast<double>(k_);
    }
    case LossKind::Conductance: {
      const Vec cut = cross_ * w;
      const Vec vol_in = cnt_in_ * w;
      const Vec vol_out = cnt_out_ * w;
      double acc = 0.0;
      for (int i = 0; i < k_; ++i) {
        const double phi =
            cut[i] == 0.0 ? 0.0 : cut[i] / std::min(vol_in[i], vol_out[i]);
        acc += std::abs(targets_[i] - phi);
      }
      return acc / static_cast<double>(k_);
    }
    case LossKind::Eigenerror:
      return eigenerror_with_weights(eig_g_, eig_result_, w, k_);
  }
  throw std::logic_error("loss: bad kind");
}

Vec LossPlan::gradient(const Vec& w) const {
  if (!differentiable())
    throw std::logic_error("eigenerror loss has no gradient");
  if (w.size() != num_weights_)
    throw std::invalid_argument("loss: weight count mismatch");

  Vec grad = Vec::Zero(num_weights_);
  switch (kind_) {
    case LossKind::QuadraticCombinatorial:
    case LossKind::QuadraticNormalized: {
      const Vec b = coef_ * w;
      for (int i = 0; i < k_; ++i)
        grad -= sign_of(targets_[i] - b[i]) * coef_.row(i).transpose();
      break;
    }
    case LossKind::Rayleigh: {
      const Vec b = coef_ * w;
      for (int i = 0; i < k_; ++i) {
        if (denom_[i] <= 1e-30) continue;
        grad -= sign_of(targets_[i] - b[i] / denom_[i]) / denom_[i] *
                coef_.row(i).transpose();
      }
      break;
    }
    case LossKind::Conductance: {
      const Vec cut = cross_ * w;
      const Vec vol_in = cnt_in_ * w;
      const Vec vol_out = cnt_out_ * w;
      for (int i = 0; i < k_; ++i) {
        if (cut[i] == 0.0) continue;  // no crossing coarse edge at all
        const bool in_side = vol_in[i] <= vol_out[i];
        const double vmin = in_side ? vol_in[i] : vol_out[i];
        const auto& cnt = in_side ? cnt_in_ : cnt_out_;
        const double phi = cut[i] / vmin;
        const double s = sign_of(targets_[i] - phi);
        // quotient rule: d(cut/vmin) = (dcut * vmin - cut * dvmin) / vmin^2
        grad -= s / (vmin * vmin) *
                (vmin * cross_.row(i) - cut[i] * cnt.row(i)).transpose();
      }
      break;
    }
    default:
      throw std::logic_error("loss: bad kind");
  }
  return grad / static_cast<double>(k_);
}

double evaluate_loss(const WeightedGraph& g, const CoarseningResult& result,
                     const Vec& coarse_weights, const LossSpec& spec,
                     const TestVectors& tv) {
  return LossPlan::build(g, result, spec, tv).value(coarse_weights);
}

Vec loss_gradient_wrt_weights(const WeightedGraph& g,
                              const CoarseningResult& result,
                              const Vec& coarse_weights, const LossSpec& spec,
                              const TestVectors& tv) {
  return LossPlan::build(g, result, spec, tv).gradient(coarse_weights);
}

}  // namespace coarsen
