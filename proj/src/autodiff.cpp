#include "glow/autodiff.hpp"

#include <cmath>
#include <string>

#include "glow/errors.hpp"

namespace glow::ad {

namespace {

double stable_softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double sigmoid_val(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double ex = std::exp(x);
    return ex / (1.0 + ex);
}

constexpr double kLn2 = 0.6931471805599453;

}  // namespace

Tensor Tape::push(Node&& n) {
    n.grad.assign(n.val.size(), 0.0);
    nodes_.push_back(std::move(n));
    return Tensor{static_cast<int>(nodes_.size()) - 1};
}

const Tape::Node& Tape::node(Tensor t) const {
    if (t.id < 0 || t.id >= static_cast<int>(nodes_.size()))
        throw invalid_input("tensor handle does not belong to this tape");
    return nodes_[static_cast<size_t>(t.id)];
}

void Tape::check_finite(const Node& n, const char* what) const {
    for (double v : n.val)
        if (!std::isfinite(v)) throw numeric_error(std::string("non-finite value in ") + what);
}

Tensor Tape::leaf(const std::vector<double>& values, int rows, int cols) {
    if (rows <= 0 || cols <= 0 || values.size() != static_cast<size_t>(rows) * cols)
        throw invalid_input("leaf shape does not match its data");
    Node n;
    n.op = Op::Leaf;
    n.rows = rows;
    n.cols = cols;
    n.val = values;
    check_finite(n, "leaf");
    return push(std::move(n));
}

Tensor Tape::scalar(double value) { return leaf({value}, 1, 1); }

Tensor Tape::matmul(Tensor ta, Tensor tb) {
    const Node& a = node(ta);
    const Node& b = node(tb);
    if (a.cols != b.rows) throw invalid_input("matmul inner dimensions disagree");
    Node n;
    n.op = Op::MatMul;
    n.a = ta.id;
    n.b = tb.id;
    n.rows = a.rows;
    n.cols = b.cols;
    n.val.assign(static_cast<size_t>(n.rows) * n.cols, 0.0);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const double av = a.val[static_cast<size_t>(i) * a.cols + k];
            if (av == 0.0) continue;
            const double* brow = &b.val[static_cast<size_t>(k) * b.cols];
            double* out = &n.val[static_cast<size_t>(i) * n.cols];
            for (int j = 0; j < b.cols; ++j) out[j] += av * brow[j];
        }
    check_finite(n, "matmul");
    return push(std::move(n));
}

Tensor Tape::add(Tensor ta, Tensor tb) {
    const Node& a = node(ta);
    const Node& b = node(tb);
    if (a.rows != b.rows || a.cols != b.cols) throw invalid_input("add shapes disagree");
    Node n;
    n.op = Op::Add;
    n.a = ta.id;
    n.b = tb.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = a.val[i] + b.val[i];
    check_finite(n, "add");
    return push(std::move(n));
}

Tensor Tape::sub(Tensor ta, Tensor tb) {
    const Node& a = node(ta);
    const Node& b = node(tb);
    if (a.rows != b.rows || a.cols != b.cols) throw invalid_input("sub shapes disagree");
    Node n;
    n.op = Op::Sub;
    n.a = ta.id;
    n.b = tb.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = a.val[i] - b.val[i];
    check_finite(n, "sub");
    return push(std::move(n));
}

Tensor Tape::mul(Tensor ta, Tensor tb) {
    const Node& a = node(ta);
    const Node& b = node(tb);
    if (a.rows != b.rows || a.cols != b.cols) throw invalid_input("mul shapes disagree");
    Node n;
    n.op = Op::Mul;
    n.a = ta.id;
    n.b = tb.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = a.val[i] * b.val[i];
    check_finite(n, "mul");
    return push(std::move(n));
}

Tensor Tape::add_rowvec(Tensor ta, Tensor tv) {
    const Node& a = node(ta);
    const Node& v = node(tv);
    if (v.rows != 1 || v.cols != a.cols) throw invalid_input("add_rowvec needs a [1,n] vector");
    Node n;
    n.op = Op::AddRowVec;
    n.a = ta.id;
    n.b = tv.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.val.resize(a.val.size());
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            n.val[static_cast<size_t>(i) * a.cols + j] =
                a.val[static_cast<size_t>(i) * a.cols + j] + v.val[static_cast<size_t>(j)];
    check_finite(n, "add_rowvec");
    return push(std::move(n));
}

Tensor Tape::mul_scalar_t(Tensor ta, Tensor ts) {
    const Node& a = node(ta);
    const Node& s = node(ts);
    if (s.rows != 1 || s.cols != 1) throw invalid_input("mul_scalar_t needs a [1,1] scale");
    Node n;
    n.op = Op::MulScalarT;
    n.a = ta.id;
    n.b = ts.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = a.val[i] * s.val[0];
    check_finite(n, "mul_scalar_t");
    return push(std::move(n));
}

Tensor Tape::broadcast_rows(Tensor tv, int m) {
    const Node& v = node(tv);
    if (v.rows != 1) throw invalid_input("broadcast_rows needs a [1,n] vector");
    if (m <= 0) throw invalid_input("broadcast_rows needs m >= 1");
    Node n;
    n.op = Op::BroadcastRows;
    n.a = tv.id;
    n.rows = m;
    n.cols = v.cols;
    n.val.resize(static_cast<size_t>(m) * v.cols);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < v.cols; ++j) n.val[static_cast<size_t>(i) * v.cols + j] = v.val[static_cast<size_t>(j)];
    check_finite(n, "broadcast_rows");
    return push(std::move(n));
}

Tensor Tape::add_const(Tensor ta, double c) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::AddConst;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.c0 = c;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = a.val[i] + c;
    check_finite(n, "add_const");
    return push(std::move(n));
}

Tensor Tape::mul_const(Tensor ta, double c) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::MulConst;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.c0 = c;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = a.val[i] * c;
    check_finite(n, "mul_const");
    return push(std::move(n));
}

Tensor Tape::pow_const(Tensor ta, double p) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::PowConst;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.c0 = p;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = std::pow(a.val[i], p);
    check_finite(n, "pow_const");
    return push(std::move(n));
}

Tensor Tape::min_const(Tensor ta, double c) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::MinConst;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.c0 = c;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = std::min(a.val[i], c);
    check_finite(n, "min_const");
    return push(std::move(n));
}

Tensor Tape::max_const(Tensor ta, double c) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::MaxConst;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.c0 = c;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = std::max(a.val[i], c);
    check_finite(n, "max_const");
    return push(std::move(n));
}

Tensor Tape::mul_rows_const(Tensor ta, const std::vector<double>& per_row) {
    const Node& a = node(ta);
    if (per_row.size() != static_cast<size_t>(a.rows))
        throw invalid_input("mul_rows_const needs one constant per row");
    Node n;
    n.op = Op::MulRowsConst;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.aux = per_row;
    n.val.resize(a.val.size());
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            n.val[static_cast<size_t>(i) * a.cols + j] =
                a.val[static_cast<size_t>(i) * a.cols + j] * per_row[static_cast<size_t>(i)];
    check_finite(n, "mul_rows_const");
    return push(std::move(n));
}

Tensor Tape::add_rows_const(Tensor ta, const std::vector<double>& per_row) {
    const Node& a = node(ta);
    if (per_row.size() != static_cast<size_t>(a.rows))
        throw invalid_input("add_rows_const needs one constant per row");
    Node n;
    n.op = Op::AddRowsConst;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.aux = per_row;
    n.val.resize(a.val.size());
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            n.val[static_cast<size_t>(i) * a.cols + j] =
                a.val[static_cast<size_t>(i) * a.cols + j] + per_row[static_cast<size_t>(i)];
    check_finite(n, "add_rows_const");
    return push(std::move(n));
}

Tensor Tape::pow_rows_const(Tensor ta, const std::vector<double>& per_row) {
    const Node& a = node(ta);
    if (per_row.size() != static_cast<size_t>(a.rows))
        throw invalid_input("pow_rows_const needs one exponent per row");
    Node n;
    n.op = Op::PowRowsConst;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.aux = per_row;
    n.val.resize(a.val.size());
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            n.val[static_cast<size_t>(i) * a.cols + j] =
                std::pow(a.val[static_cast<size_t>(i) * a.cols + j], per_row[static_cast<size_t>(i)]);
    check_finite(n, "pow_rows_const");
    return push(std::move(n));
}

Tensor Tape::exp2(Tensor ta) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::Exp2;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = std::exp2(a.val[i]);
    check_finite(n, "exp2");
    return push(std::move(n));
}

Tensor Tape::softplus(Tensor ta) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::Softplus;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = stable_softplus(a.val[i]);
    check_finite(n, "softplus");
    return push(std::move(n));
}

Tensor Tape::sigmoid(Tensor ta) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::Sigmoid;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = sigmoid_val(a.val[i]);
    check_finite(n, "sigmoid");
    return push(std::move(n));
}

Tensor Tape::tanh(Tensor ta) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::Tanh;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = a.cols;
    n.val.resize(a.val.size());
    for (size_t i = 0; i < a.val.size(); ++i) n.val[i] = std::tanh(a.val[i]);
    check_finite(n, "tanh");
    return push(std::move(n));
}

Tensor Tape::sum(Tensor ta) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::Sum;
    n.a = ta.id;
    n.rows = 1;
    n.cols = 1;
    double acc = 0.0;
    for (double v : a.val) acc += v;
    n.val = {acc};
    check_finite(n, "sum");
    return push(std::move(n));
}

Tensor Tape::mean(Tensor ta) {
    const Node& a = node(ta);
    Node n;
    n.op = Op::Mean;
    n.a = ta.id;
    n.rows = 1;
    n.cols = 1;
    double acc = 0.0;
    for (double v : a.val) acc += v;
    n.val = {acc / static_cast<double>(a.val.size())};
    check_finite(n, "mean");
    return push(std::move(n));
}

Tensor Tape::avgpool2x2(Tensor ta, int h, int w, int ch) {
    const Node& a = node(ta);
    if (h <= 0 || w <= 0 || ch <= 0 || h % 2 != 0 || w % 2 != 0)
        throw invalid_input("avgpool2x2 needs even positive raster dims");
    if (static_cast<size_t>(h) * w * ch != static_cast<size_t>(a.cols))
        throw invalid_input("avgpool2x2 raster dims do not match column count");
    const int oh = h / 2, ow = w / 2;
    Node n;
    n.op = Op::AvgPool2x2;
    n.a = ta.id;
    n.rows = a.rows;
    n.cols = oh * ow * ch;
    n.ph = h;
    n.pw = w;
    n.pc = ch;
    n.val.assign(static_cast<size_t>(n.rows) * n.cols, 0.0);
    for (int r = 0; r < a.rows; ++r) {
        const double* src = &a.val[static_cast<size_t>(r) * a.cols];
        double* dst = &n.val[static_cast<size_t>(r) * n.cols];
        for (int oy = 0; oy < oh; ++oy)
            for (int ox = 0; ox < ow; ++ox)
                for (int c = 0; c < ch; ++c) {
                    double acc = 0.0;
                    for (int dy = 0; dy < 2; ++dy)
                        for (int dx = 0; dx < 2; ++dx)
                            acc += src[((static_cast<size_t>(oy) * 2 + dy) * w + (ox * 2 + dx)) * ch + c];
                    dst[(static_cast<size_t>(oy) * ow + ox) * ch + c] = acc * 0.25;
                }
    }
    check_finite(n, "avgpool2x2");
    return push(std::move(n));
}

const std::vector<double>& Tape::values(Tensor t) const { return node(t).val; }
const std::vector<double>& Tape::grad(Tensor t) const { return node(t).grad; }

double Tape::value_scalar(Tensor t) const {
    const Node& n = node(t);
    if (n.val.size() != 1) throw invalid_input("value_scalar on a non-scalar node");
    return n.val[0];
}

int Tape::rows(Tensor t) const { return node(t).rows; }
int Tape::cols(Tensor t) const { return node(t).cols; }

void Tape::backward(Tensor root) {
    Node& r = nodes_.at(static_cast<size_t>(root.id));
    if (r.val.size() != 1) throw invalid_input("backward needs a scalar root");
    for (Node& n : nodes_) std::fill(n.grad.begin(), n.grad.end(), 0.0);
    r.grad[0] = 1.0;

    for (int idx = root.id; idx >= 0; --idx) {
        Node& n = nodes_[static_cast<size_t>(idx)];
        bool any = false;
        for (double g : n.grad)
            if (g != 0.0) { any = true; break; }
        if (!any || n.op == Op::Leaf) continue;

        Node& a = nodes_[static_cast<size_t>(n.a)];
        switch (n.op) {
            case Op::MatMul: {
                Node& b = nodes_[static_cast<size_t>(n.b)];
                // dA = G * B^T
                for (int i = 0; i < a.rows; ++i)
                    for (int k = 0; k < a.cols; ++k) {
                        double acc = 0.0;
                        const double* grow = &n.grad[static_cast<size_t>(i) * n.cols];
                        const double* brow = &b.val[static_cast<size_t>(k) * b.cols];
                        for (int j = 0; j < n.cols; ++j) acc += grow[j] * brow[j];
                        a.grad[static_cast<size_t>(i) * a.cols + k] += acc;
                    }
                // dB = A^T * G
                for (int k = 0; k < b.rows; ++k)
                    for (int i = 0; i < a.rows; ++i) {
                        const double av = a.val[static_cast<size_t>(i) * a.cols + k];
                        if (av == 0.0) continue;
                        const double* grow = &n.grad[static_cast<size_t>(i) * n.cols];
                        double* brow = &b.grad[static_cast<size_t>(k) * b.cols];
                        for (int j = 0; j < n.cols; ++j) brow[j] += av * grow[j];
                    }
                break;
            }
            case Op::Add: {
                Node& b = nodes_[static_cast<size_t>(n.b)];
                for (size_t i = 0; i < n.grad.size(); ++i) {
                    a.grad[i] += n.grad[i];
                    b.grad[i] += n.grad[i];
                }
                break;
            }
            case Op::Sub: {
                Node& b = nodes_[static_cast<size_t>(n.b)];
                for (size_t i = 0; i < n.grad.size(); ++i) {
                    a.grad[i] += n.grad[i];
                    b.grad[i] -= n.grad[i];
                }
                break;
            }
            case Op::Mul: {
                Node& b = nodes_[static_cast<size_t>(n.b)];
                for (size_t i = 0; i < n.grad.size(); ++i) {
                    a.grad[i] += n.grad[i] * b.val[i];
                    b.grad[i] += n.grad[i] * a.val[i];
                }
                break;
            }
            case Op::AddRowVec: {
                Node& v = nodes_[static_cast<size_t>(n.b)];
                for (int i = 0; i < n.rows; ++i)
                    for (int j = 0; j < n.cols; ++j) {
                        const double g = n.grad[static_cast<size_t>(i) * n.cols + j];
                        a.grad[static_cast<size_t>(i) * n.cols + j] += g;
                        v.grad[static_cast<size_t>(j)] += g;
                    }
                break;
            }
            case Op::MulScalarT: {
                Node& s = nodes_[static_cast<size_t>(n.b)];
                double acc = 0.0;
                for (size_t i = 0; i < n.grad.size(); ++i) {
                    a.grad[i] += n.grad[i] * s.val[0];
                    acc += n.grad[i] * a.val[i];
                }
                s.grad[0] += acc;
                break;
            }
            case Op::BroadcastRows: {
                for (int i = 0; i < n.rows; ++i)
                    for (int j = 0; j < n.cols; ++j)
                        a.grad[static_cast<size_t>(j)] += n.grad[static_cast<size_t>(i) * n.cols + j];
                break;
            }
            case Op::AddConst:
                for (size_t i = 0; i < n.grad.size(); ++i) a.grad[i] += n.grad[i];
                break;
            case Op::MulConst:
                for (size_t i = 0; i < n.grad.size(); ++i) a.grad[i] += n.grad[i] * n.c0;
                break;
            case Op::PowConst:
                for (size_t i = 0; i < n.grad.size(); ++i)
                    a.grad[i] += n.grad[i] * n.c0 * std::pow(a.val[i], n.c0 - 1.0);
                break;
            case Op::MinConst:
                for (size_t i = 0; i < n.grad.size(); ++i)
                    if (a.val[i] <= n.c0) a.grad[i] += n.grad[i];
                break;
            case Op::MaxConst:
                for (size_t i = 0; i < n.grad.size(); ++i)
                    if (a.val[i] >= n.c0) a.grad[i] += n.grad[i];
                break;
            case Op::MulRowsConst:
                for (int i = 0; i < n.rows; ++i)
                    for (int j = 0; j < n.cols; ++j)
                        a.grad[static_cast<size_t>(i) * n.cols + j] +=
                            n.grad[static_cast<size_t>(i) * n.cols + j] * n.aux[static_cast<size_t>(i)];
                break;
            case Op::AddRowsConst:
                for (size_t i = 0; i < n.grad.size(); ++i) a.grad[i] += n.grad[i];
                break;
            case Op::PowRowsConst:
                for (int i = 0; i < n.rows; ++i) {
                    const double p = n.aux[static_cast<size_t>(i)];
                    for (int j = 0; j < n.cols; ++j) {
                        const size_t k = static_cast<size_t>(i) * n.cols + j;
                        a.grad[k] += n.grad[k] * p * std::pow(a.val[k], p - 1.0);
                    }
                }
                break;
            case Op::Exp2:
                for (size_t i = 0; i < n.grad.size(); ++i) a.grad[i] += n.grad[i] * kLn2 * n.val[i];
                break;
            case Op::Softplus:
                for (size_t i = 0; i < n.grad.size(); ++i) a.grad[i] += n.grad[i] * sigmoid_val(a.val[i]);
                break;
            case Op::Sigmoid:
                for (size_t i = 0; i < n.grad.size(); ++i)
                    a.grad[i] += n.grad[i] * n.val[i] * (1.0 - n.val[i]);
                break;
            case Op::Tanh:
                for (size_t i = 0; i < n.grad.size(); ++i)
                    a.grad[i] += n.grad[i] * (1.0 - n.val[i] * n.val[i]);
                break;
            case Op::Sum:
                for (size_t i = 0; i < a.grad.size(); ++i) a.grad[i] += n.grad[0];
                break;
            case Op::Mean: {
                const double g = n.grad[0] / static_cast<double>(a.grad.size());
                for (size_t i = 0; i < a.grad.size(); ++i) a.grad[i] += g;
                break;
            }
            case Op::AvgPool2x2: {
                const int oh = n.ph / 2, ow = n.pw / 2, ch = n.pc;
                for (int r = 0; r < n.rows; ++r) {
                    const double* grow = &n.grad[static_cast<size_t>(r) * n.cols];
                    double* arow = &a.grad[static_cast<size_t>(r) * a.cols];
                    for (int oy = 0; oy < oh; ++oy)
                        for (int ox = 0; ox < ow; ++ox)
                            for (int c = 0; c < ch; ++c) {
                                const double g = grow[(static_cast<size_t>(oy) * ow + ox) * ch + c] * 0.25;
                                for (int dy = 0; dy < 2; ++dy)
                                    for (int dx = 0; dx < 2; ++dx)
                                        arow[((static_cast<size_t>(oy) * 2 + dy) * n.pw + (ox * 2 + dx)) * ch + c] += g;
                            }
                }
                break;
            }
            case Op::Leaf:
                break;
        }
        for (double g : a.grad)
            if (!std::isfinite(g)) throw numeric_error("non-finite gradient");
    }
}

double grad_check(const std::function<GradCheckGraph(Tape&)>& build,
                  const std::vector<std::vector<double>*>& storages, double h) {
    if (h <= 0.0) throw invalid_input("grad_check step must be positive");

    Tape tape;
    GradCheckGraph g = build(tape);
    if (g.leaves.size() != storages.size())
        throw invalid_input("grad_check: one leaf per checked storage required");
    tape.backward(g.root);
    std::vector<std::vector<double>> analytic;
    analytic.reserve(g.leaves.size());
    for (Tensor t : g.leaves) analytic.push_back(tape.grad(t));

    auto eval = [&]() {
        Tape t2;
        GradCheckGraph g2 = build(t2);
        return t2.value_scalar(g2.root);
    };

    double worst = 0.0;
    for (size_t s = 0; s < storages.size(); ++s) {
        std::vector<double>& p = *storages[s];
        if (analytic[s].size() != p.size())
            throw invalid_input("grad_check: leaf shape does not match its storage");
        for (size_t i = 0; i < p.size(); ++i) {
            const double keep = p[i];
            p[i] = keep + h;
            const double fp = eval();
            p[i] = keep - h;
            const double fm = eval();
            p[i] = keep;
            const double fd = (fp - fm) / (2.0 * h);
            const double an = analytic[s][i];
            const double err = std::abs(fd - an) / std::max({1.0, std::abs(fd), std::abs(an)});
            worst = std::max(worst, err);
        }
    }
    return worst;
}

}  // namespace glow::ad
