#pragma once

#include <functional>
#include <vector>

namespace glow::ad {

/// Handle into a Tape. Valid only for the tape that produced it.
struct Tensor {
    int id = -1;
};

/// Reverse-mode tape over dense row-major double matrices. Every op checks
/// its outputs for NaN/Inf and throws numeric_error on the first hit.
/// backward() accumulates gradients for every node reachable from the root.
class Tape {
  public:
    /// Differentiable input node. All leaves get gradient slots; callers
    /// simply ignore gradients they do not need.
    Tensor leaf(const std::vector<double>& values, int rows, int cols);
    Tensor scalar(double value);

    // binary, shape-matched
    Tensor matmul(Tensor a, Tensor b);
    Tensor add(Tensor a, Tensor b);
    Tensor sub(Tensor a, Tensor b);
    Tensor mul(Tensor a, Tensor b);

    // broadcasts
    Tensor add_rowvec(Tensor a, Tensor v);      // a[m,n] + v[1,n] per row
    Tensor mul_scalar_t(Tensor a, Tensor s);    // a[m,n] * s[1,1]
    Tensor broadcast_rows(Tensor v, int m);     // v[1,n] -> [m,n]

    // scalar-constant pointwise
    Tensor add_const(Tensor a, double c);
    Tensor mul_const(Tensor a, double c);
    Tensor pow_const(Tensor a, double p);
    /// min(a, c); subgradient 1 where a <= c, 0 where a > c
    Tensor min_const(Tensor a, double c);
    /// max(a, c); subgradient 1 where a >= c, 0 where a < c
    Tensor max_const(Tensor a, double c);

    // per-row-constant pointwise (one constant per matrix row; the constants
    // are not differentiated)
    Tensor mul_rows_const(Tensor a, const std::vector<double>& per_row);
    Tensor add_rows_const(Tensor a, const std::vector<double>& per_row);
    Tensor pow_rows_const(Tensor a, const std::vector<double>& per_row);

    // pointwise nonlinearities
    Tensor exp2(Tensor a);
    Tensor softplus(Tensor a);
    Tensor sigmoid(Tensor a);
    Tensor tanh(Tensor a);

    // reductions to [1,1]
    Tensor sum(Tensor a);
    Tensor mean(Tensor a);

    /// 2x2 average pooling of rows holding h*w*ch rasters (h, w even).
    Tensor avgpool2x2(Tensor a, int h, int w, int ch);

    const std::vector<double>& values(Tensor t) const;
    const std::vector<double>& grad(Tensor t) const;
    double value_scalar(Tensor t) const;
    int rows(Tensor t) const;
    int cols(Tensor t) const;
    size_t node_count() const { return nodes_.size(); }

    /// Seeds the scalar root with gradient 1 and sweeps the tape in reverse.
    void backward(Tensor root);

  private:
    enum class Op {
        Leaf, MatMul, Add, Sub, Mul, AddRowVec, MulScalarT, BroadcastRows,
        AddConst, MulConst, PowConst, MinConst, MaxConst,
        MulRowsConst, AddRowsConst, PowRowsConst,
        Exp2, Softplus, Sigmoid, Tanh, Sum, Mean, AvgPool2x2,
    };
    struct Node {
        Op op;
        int a = -1, b = -1;
        int rows = 0, cols = 0;
        double c0 = 0.0;
        std::vector<double> aux;
        std::vector<double> val;
        std::vector<double> grad;
        int ph = 0, pw = 0, pc = 0;  // raster dims for pooling
    };

    Tensor push(Node&& n);
    const Node& node(Tensor t) const;
    void check_finite(const Node& n, const char* what) const;

    std::vector<Node> nodes_;
};

/// One rebuildable scalar graph for finite-difference verification: leaves
/// must be created from the current contents of the checked storages, in the
/// same order.
struct GradCheckGraph {
    Tensor root;
    std::vector<Tensor> leaves;
};

/// Central-difference check of every entry of every storage against the
/// backward pass. Returns the maximum discrepancy |fd - g| / max(1,|fd|,|g|).
double grad_check(const std::function<GradCheckGraph(Tape&)>& build,
                  const std::vector<std::vector<double>*>& storages, double h);

}  // namespace glow::ad
