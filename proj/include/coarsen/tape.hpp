#pragma once

#include <utility>
#include <vector>

#include <coarsen/graph.hpp>

namespace coarsen::ad {

// Handle to a node recorded on a Tape.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Reverse-mode tape over dense matrices.
//
// A forward pass records nodes; backward() replays them in reverse and
// accumulates gradients of a scalar objective into per-slot parameter
// buffers.  The op set is intentionally small: it covers exactly what the
// weight-prediction models need (linear layers, constant sparse matmul,
// elementwise ReLU, row-mean pooling, scalar shifts).
class Tape {
 public:
  // Leaf holding a constant (no gradient tracked).
  Var constant(Mat value);

  // Leaf holding a parameter tensor; gradients accumulate into
  // param_grads[slot] during backward().
  Var param(Mat value, int slot);

  // y = x * w^T + 1 * b, with x (r x in), w (out x in), b (1 x out).
  Var affine(Var x, Var w, Var b);

  // y = (*a) * x.  The sparse matrix is treated as a constant and must
  // outlive any backward() call that reaches this node.
  Var spmm(const SpMat* a, Var x);

  // Elementwise sum of two same-shaped nodes.
  Var add(Var a, Var b);

  // Elementwise max(value, 0).
  Var relu(Var a);

  // Row vector (1 x c) of column means.
  Var mean_rows(Var a);

  // y = a + s elementwise.
  Var add_scalar(Var a, double s);

  const Mat& value(Var v) const;

  // Backpropagate from several scalar (1x1) outputs at once, seeding each
  // with the given objective sensitivity.  Gradients are ADDED into
  // param_grads; missing or empty slots are zero-initialized to the
  // parameter's shape.
  void backward(const std::vector<std::pair<Var, double>>& scalar_seeds,
                std::vector<Mat>& param_grads);

  // Single-output variant with an arbitrary seed of the output's shape.
  void backward(Var out, const Mat& seed, std::vector<Mat>& param_grads);

  // Forget all nodes but keep allocated capacity.
  void clear();

  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  enum class Op { Constant, Param, Affine, Spmm, Add, Relu, MeanRows, AddScalar };

  struct Node {
    Op op;
    int a = -1;
    int b = -1;
    int c = -1;
    int slot = -1;
    const SpMat* sparse = nullptr;
    double scalar = 0.0;
    Mat value;
  };

  Var push(Node node);
  void run_backward(std::vector<Mat>& grads, std::vector<Mat>& param_grads);

  std::vector<Node> nodes_;
};

}  // namespace coarsen::ad
