#include <coarsen/tape.hpp>

#include <stdexcept>
#include <string>

namespace coarsen::ad {

namespace {

void check_valid(Var v, const char* what) {
  if (!v.valid()) throw std::invalid_argument(std::string(what) + ": invalid Var");
}

}  // namespace

Var Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Var Tape::constant(Mat value) {
  Node n;
  n.op = Op::Constant;
  n.value = std::move(value);
  return push(std::move(n));
}

Var Tape::param(Mat value, int slot) {
  if (slot < 0) throw std::invalid_argument("Tape::param: negative slot");
  Node n;
  n.op = Op::Param;
  n.slot = slot;
  n.value = std::move(value);
  return push(std::move(n));
}

Var Tape::affine(Var x, Var w, Var b) {
  check_valid(x, "affine");
  check_valid(w, "affine");
  check_valid(b, "affine");
  const Mat& xv = nodes_[x.id].value;
  const Mat& wv = nodes_[w.id].value;
  const Mat& bv = nodes_[b.id].value;
  if (xv.cols() != wv.cols())
    throw std::invalid_argument("Tape::affine: input/weight dimension mismatch");
  if (bv.rows() != 1 || bv.cols() != wv.rows())
    throw std::invalid_argument("Tape::affine: bias must be 1 x out");
  Node n;
  n.op = Op::Affine;
  n.a = x.id;
  n.b = w.id;
  n.c = b.id;
  n.value = (xv * wv.transpose()).rowwise() + bv.row(0);
  return push(std::move(n));
}

Var Tape::spmm(const SpMat* a, Var x) {
  check_valid(x, "spmm");
  if (a == nullptr) throw std::invalid_argument("Tape::spmm: null matrix");
  const Mat& xv = nodes_[x.id].value;
  if (a->cols() != xv.rows())
    throw std::invalid_argument("Tape::spmm: dimension mismatch");
  Node n;
  n.op = Op::Spmm;
  n.a = x.id;
  n.sparse = a;
  n.value = (*a) * xv;
  return push(std::move(n));
}

Var Tape::add(Var a, Var b) {
  check_valid(a, "add");
  check_valid(b, "add");
  const Mat& av = nodes_[a.id].value;
  const Mat& bv = nodes_[b.id].value;
  if (av.rows() != bv.rows() || av.cols() != bv.cols())
    throw std::invalid_argument("Tape::add: shape mismatch");
  Node n;
  n.op = Op::Add;
  n.a = a.id;
  n.b = b.id;
  n.value = av + bv;
  return push(std::move(n));
}

Var Tape::relu(Var a) {
  check_valid(a, "relu");
  Node n;
  n.op = Op::Relu;
  n.a = a.id;
  n.value = nodes_[a.id].value.cwiseMax(0.0);
  return push(std::move(n));
}

Var Tape::mean_rows(Var a) {
  check_valid(a, "mean_rows");
  const Mat& av = nodes_[a.id].value;
  if (av.rows() == 0) throw std::invalid_argument("Tape::mean_rows: empty input");
  Node n;
  n.op = Op::MeanRows;
  n.a = a.id;
  n.value = av.colwise().mean();
  return push(std::move(n));
}

Var Tape::add_scalar(Var a, double s) {
  check_valid(a, "add_scalar");
  Node n;
  n.op = Op::AddScalar;
  n.a = a.id;
  n.scalar = s;
  n.value = nodes_[a.id].value.array() + s;
  return push(std::move(n));
}

const Mat& Tape::value(Var v) const {
  check_valid(v, "value");
  return nodes_.at(v.id).value;
}

void Tape::backward(const std::vector<std::pair<Var, double>>& scalar_seeds,
                    std::vector<Mat>& param_grads) {
  std::vector<Mat> grads(nodes_.size());
  for (const auto& [var, seed] : scalar_seeds) {
    check_valid(var, "backward");
    const Mat& v = nodes_.at(var.id).value;
    if (v.rows() != 1 || v.cols() != 1)
      throw std::invalid_argument("Tape::backward: scalar seed on non-1x1 node");
    if (grads[var.id].size() == 0) grads[var.id] = Mat::Zero(1, 1);
    grads[var.id](0, 0) += seed;
  }
  run_backward(grads, param_grads);
}

void Tape::backward(Var out, const Mat& seed, std::vector<Mat>& param_grads) {
  check_valid(out, "backward");
  const Mat& v = nodes_.at(out.id).value;
  if (seed.rows() != v.rows() || seed.cols() != v.cols())
    throw std::invalid_argument("Tape::backward: seed shape mismatch");
  std::vector<Mat> grads(nodes_.size());
  grads[out.id] = seed;
  run_backward(grads, param_grads);
}

void Tape::run_backward(std::vector<Mat>& grads, std::vector<Mat>& param_grads) {
  auto acc = [&](int id, const Mat& g) {
    if (grads[id].size() == 0)
      grads[id] = g;
    else
      grads[id] += g;
  };
  for (int id = static_cast<int>(nodes_.size()) - 1; id >= 0; --id) {
    if (grads[id].size() == 0) continue;
    const Node& n = nodes_[id];
    const Mat& g = grads[id];
    switch (n.op) {
      case Op::Constant:
        break;
      case Op::Param: {
        if (static_cast<int>(param_grads.size()) <= n.slot)
          param_grads.resize(n.slot + 1);
        Mat& pg = param_grads[n.slot];
        if (pg.size() == 0) pg = Mat::Zero(n.value.rows(), n.value.cols());
        pg += g;
        break;
      }
      case Op::Affine: {
        const Mat& xv = nodes_[n.a].value;
        const Mat& wv = nodes_[n.b].value;
        acc(n.a, g * wv);
        acc(n.b, g.transpose() * xv);
        acc(n.c, g.colwise().sum());
        break;
      }
      case Op::Spmm:
        acc(n.a, n.sparse->transpose() * g);
        break;
      case Op::Add:
        acc(n.a, g);
        acc(n.b, g);
        break;
      case Op::Relu: {
        const Mat& xv = nodes_[n.a].value;
        acc(n.a, (xv.array() > 0.0).cast<double>().matrix().cwiseProduct(g));
        break;
      }
      case Op::MeanRows: {
        const Mat& xv = nodes_[n.a].value;
        const double inv = 1.0 / static_cast<double>(xv.rows());
        acc(n.a, (g.row(0) * inv).replicate(xv.rows(), 1));
        break;
      }
      case Op::AddScalar:
        acc(n.a, g);
        break;
    }
    grads[id].resize(0, 0);
  }
}

void Tape::clear() { nodes_.clear(); }

}  // namespace coarsen::ad
