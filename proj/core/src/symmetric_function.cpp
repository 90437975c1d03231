// Copyright 2026 The pinchcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pinchcert/symmetric_function.hpp"

#include <charconv>
#include <cmath>
#include <span>
#include <string>
#include <system_error>

#include "pinchcert/errors.hpp"

namespace pinchcert {
namespace {

enum class Builtin {
  kMeanCurvature,
  kMeanCurvaturePower,
  kNormSquared,
  kGaussCurvature,
  kTracePower,
  kPhiH3,
  kPsiH3,
  kPhiA2,
  kPsiA2,
  kPhiK,
  kPsiK,
  kVanishingSum,
};

enum class Op { kBuiltin, kConstant, kSum, kDifference, kProduct, kQuotient, kPower };

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

struct SymmetricFunction::Node {
  Op op = Op::kConstant;
  Builtin builtin = Builtin::kMeanCurvature;
  // sigma for powers of built-ins, the exponent for kPower, the value for kConstant.
  double param = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  std::vector<IndexPair> pairs;

  std::string name;
  Degree degree;
  bool symmetric = true;
  std::optional<std::size_t> required_dim;
};

namespace {

using Node = SymmetricFunction::Node;

template <class T>
T make_constant(std::size_t dim, double v) {
  if constexpr (std::is_same_v<T, double>) {
    (void)dim;
    return v;
  } else {
    return Jet2::constant(dim, v);
  }
}

template <class T>
T power(const T& x, double e) {
  if constexpr (std::is_same_v<T, double>) {
    if (std::floor(e) != e && x <= 0.0) {
      throw EvaluationError("non-integer power of a non-positive value");
    }
    return std::pow(x, e);
  } else {
    return pow(x, e);
  }
}

template <class T>
T sum_of(std::span<const T> x) {
  T out = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) out += x[i];
  return out;
}

template <class T>
T sum_of_squares(std::span<const T> x) {
  T out = x[0] * x[0];
  for (std::size_t i = 1; i < x.size(); ++i) out += x[i] * x[i];
  return out;
}

template <class T>
T product_of(std::span<const T> x) {
  T out = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) out *= x[i];
  return out;
}

// sum_{i<j} (x_i - x_j)^2
template <class T>
T squared_spread(std::span<const T> x) {
  T out = make_constant<T>(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) out += square(x[i] - x[j]);
  return out;
}

template <class T>
T pair_term(std::span<const T> x, std::size_t i, std::size_t j) {
  return square(x[i] - x[j]) / square(x[i] * x[j]);
}

template <class T>
T all_pair_terms(std::span<const T> x) {
  T out = make_constant<T>(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) out += pair_term(x, i, j);
  return out;
}

template <class T>
T evaluate(const Node& node, std::span<const T> x);

template <class T>
T evaluate_builtin(const Node& node, std::span<const T> x) {
  switch (node.builtin) {
    case Builtin::kMeanCurvature:
      return sum_of(x);
    case Builtin::kMeanCurvaturePower:
      return power(sum_of(x), node.param);
    case Builtin::kNormSquared:
      return sum_of_squares(x);
    case Builtin::kGaussCurvature:
      return product_of(x);
    case Builtin::kTracePower: {
      T out = power(x[0], node.param);
      for (std::size_t i = 1; i < x.size(); ++i) out += power(x[i], node.param);
      return out;
    }
    case Builtin::kPhiH3:
      return squared_spread(x) / square(sum_of(x));
    case Builtin::kPsiH3:
      return all_pair_terms(x) * power(sum_of(x), 6.0);
    case Builtin::kPhiA2: {
      const T e2 = x[0] * x[1] + x[0] * x[2] + x[1] * x[2];
      return sum_of_squares(x) * square(e2) / square(product_of(x));
    }
    case Builtin::kPsiA2:
      return square(sum_of(x)) * squared_spread(x) / product_of(x);
    case Builtin::kPhiK:
      return squared_spread(x) / sum_of_squares(x);
    case Builtin::kPsiK:
      return all_pair_terms(x) * square(product_of(x));
    case Builtin::kVanishingSum: {
      T terms = make_constant<T>(x.size(), 0.0);
      for (const auto& [i, j] : node.pairs) terms += pair_term(x, i, j);
      return terms * square(evaluate(*node.lhs, x));
    }
  }
  throw EvaluationError("unknown built-in");
}

template <class T>
T evaluate(const Node& node, std::span<const T> x) {
  switch (node.op) {
    case Op::kBuiltin:
      return evaluate_builtin(node, x);
    case Op::kConstant:
      return make_constant<T>(x.size(), node.param);
    case Op::kSum:
      return evaluate(*node.lhs, x) + evaluate(*node.rhs, x);
    case Op::kDifference:
      return evaluate(*node.lhs, x) - evaluate(*node.rhs, x);
    case Op::kProduct:
      return evaluate(*node.lhs, x) * evaluate(*node.rhs, x);
    case Op::kQuotient: {
      const T den = evaluate(*node.rhs, x);
      if constexpr (std::is_same_v<T, double>) {
        if (den == 0.0) throw EvaluationError("division by zero in " + node.name);
      }
      return evaluate(*node.lhs, x) / den;
    }
    case Op::kPower:
      return power(evaluate(*node.lhs, x), node.param);
  }
  throw EvaluationError("unknown expression node");
}

std::shared_ptr<const Node> make_builtin(Builtin b, std::string name, Degree degree,
                                         double param = 0.0,
                                         std::optional<std::size_t> dim = std::nullopt) {
  auto node = std::make_shared<Node>();
  node->op = Op::kBuiltin;
  node->builtin = b;
  node->param = param;
  node->name = std::move(name);
  node->degree = degree;
  node->required_dim = dim;
  return node;
}

std::optional<std::size_t> merge_dims(const Node& lhs, const Node& rhs) {
  if (lhs.required_dim && rhs.required_dim && *lhs.required_dim != *rhs.required_dim) {
    throw InvalidArgument("cannot combine " + lhs.name + " and " + rhs.name +
                          ": they are tied to different dimensions");
  }
  return lhs.required_dim ? lhs.required_dim : rhs.required_dim;
}

std::shared_ptr<const Node> make_binary(Op op, const std::shared_ptr<const Node>& lhs,
                                        const std::shared_ptr<const Node>& rhs) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->lhs = lhs;
  node->rhs = rhs;
  node->symmetric = lhs->symmetric && rhs->symmetric;
  node->required_dim = merge_dims(*lhs, *rhs);
  const char* symbol = "+";
  switch (op) {
    case Op::kSum:
    case Op::kDifference:
      if (!lhs->degree.same_as(rhs->degree)) {
        throw NonHomogeneousError("cannot add " + lhs->name + " and " + rhs->name +
                                  " of different homogeneity degree");
      }
      symbol = op == Op::kSum ? "+" : "-";
      node->degree = lhs->degree;
      break;
    case Op::kProduct:
      symbol = "*";
      node->degree = {lhs->degree.constant + rhs->degree.constant,
                      lhs->degree.per_dim + rhs->degree.per_dim};
      break;
    case Op::kQuotient:
      symbol = "/";
      node->degree = {lhs->degree.constant - rhs->degree.constant,
                      lhs->degree.per_dim - rhs->degree.per_dim};
      break;
    default:
      throw InvalidArgument("not a binary operation");
  }
  node->name = "(" + lhs->name + " " + symbol + " " + rhs->name + ")";
  return node;
}

std::optional<double> parse_exponent(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

}  // namespace

bool Degree::same_as(const Degree& other) const {
  return std::abs(constant - other.constant) <= 1e-12 &&
         std::abs(per_dim - other.per_dim) <= 1e-12;
}

SymmetricFunction SymmetricFunction::mean_curvature() {
  return SymmetricFunction(make_builtin(Builtin::kMeanCurvature, "H", {1.0, 0.0}));
}

SymmetricFunction SymmetricFunction::mean_curvature_power(double sigma) {
  const std::string name = sigma == 3.0 ? "H3" : "H^" + format_number(sigma);
  return SymmetricFunction(make_builtin(Builtin::kMeanCurvaturePower, name, {sigma, 0.0}, sigma));
}

SymmetricFunction SymmetricFunction::norm_squared() {
  return SymmetricFunction(make_builtin(Builtin::kNormSquared, "A2", {2.0, 0.0}));
}

SymmetricFunction SymmetricFunction::gauss_curvature() {
  return SymmetricFunction(make_builtin(Builtin::kGaussCurvature, "K", {0.0, 1.0}));
}

SymmetricFunction SymmetricFunction::trace_power(double sigma) {
  return SymmetricFunction(
      make_builtin(Builtin::kTracePower, "trA^" + format_number(sigma), {sigma, 0.0}, sigma));
}

SymmetricFunction SymmetricFunction::phi_h3() {
  return SymmetricFunction(make_builtin(Builtin::kPhiH3, "phi_H3", {0.0, 0.0}));
}

SymmetricFunction SymmetricFunction::psi_h3() {
  // pair terms have degree -2, (H^3)^2 degree 6.
  return SymmetricFunction(make_builtin(Builtin::kPsiH3, "psi_H3", {4.0, 0.0}));
}

SymmetricFunction SymmetricFunction::phi_a2() {
  return SymmetricFunction(make_builtin(Builtin::kPhiA2, "phi_A2", {0.0, 0.0}, 0.0, 3));
}

SymmetricFunction SymmetricFunction::psi_a2() {
  return SymmetricFunction(make_builtin(Builtin::kPsiA2, "psi_A2", {1.0, 0.0}, 0.0, 3));
}

SymmetricFunction SymmetricFunction::phi_k() {
  return SymmetricFunction(make_builtin(Builtin::kPhiK, "phi_K", {0.0, 0.0}));
}

SymmetricFunction SymmetricFunction::psi_k() {
  return SymmetricFunction(make_builtin(Builtin::kPsiK, "psi_K", {-2.0, 2.0}));
}

SymmetricFunction SymmetricFunction::vanishing_sum(std::size_t n, std::vector<IndexPair> pairs,
                                                   const SymmetricFunction& velocity) {
  if (n < 2 || n > kMaxDim) throw InvalidArgument("vanishing sum dimension out of range");
  if (pairs.empty()) throw InvalidArgument("vanishing sum needs at least one pair");
  if (velocity.required_dim() && *velocity.required_dim() != n) {
    throw InvalidArgument("velocity " + velocity.name() + " is tied to another dimension");
  }
  std::vector<bool> seen(n * n, false);
  std::string list;
  for (auto& [i, j] : pairs) {
    if (i > j) std::swap(i, j);
    if (i == j || j >= n) throw InvalidArgument("invalid pair in vanishing sum");
    if (seen[i * n + j]) throw InvalidArgument("duplicate pair in vanishing sum");
    seen[i * n + j] = true;
    if (!list.empty()) list += ",";
    list += std::to_string(i + 1) + std::to_string(j + 1);
  }
  const std::size_t total = n * (n - 1) / 2;
  const double f_degree = velocity.degree(n);
  auto node = make_builtin(Builtin::kVanishingSum,
                           "vanishing_sum(n=" + std::to_string(n) + ",pairs=" + list + "," +
                               velocity.name() + ")",
                           {2.0 * f_degree - 2.0, 0.0}, 0.0, n);
  auto mutable_node = std::const_pointer_cast<Node>(node);
  mutable_node->pairs = std::move(pairs);
  mutable_node->lhs = velocity.node_;
  mutable_node->symmetric = mutable_node->pairs.size() == total && velocity.symmetric();
  return SymmetricFunction(std::move(node));
}

SymmetricFunction SymmetricFunction::constant(double value) {
  auto node = std::make_shared<Node>();
  node->op = Op::kConstant;
  node->param = value;
  node->name = format_number(value);
  return SymmetricFunction(std::move(node));
}

SymmetricFunction SymmetricFunction::from_name(std::string_view name) {
  if (name == "H") return mean_curvature();
  if (name == "H3") return mean_curvature_power(3.0);
  if (name == "A2") return norm_squared();
  if (name == "K") return gauss_curvature();
  if (name == "phi_H3") return phi_h3();
  if (name == "psi_H3") return psi_h3();
  if (name == "phi_A2") return phi_a2();
  if (name == "psi_A2") return psi_a2();
  if (name == "phi_K") return phi_k();
  if (name == "psi_K") return psi_k();
  if (name.starts_with("H^")) {
    if (auto e = parse_exponent(name.substr(2))) return mean_curvature_power(*e);
  }
  if (name.starts_with("trA^")) {
    if (auto e = parse_exponent(name.substr(4))) return trace_power(*e);
  }
  throw InvalidArgument("unknown symmetric function '" + std::string(name) + "'");
}

std::string SymmetricFunction::name() const { return node_->name; }
Degree SymmetricFunction::degree() const { return node_->degree; }
bool SymmetricFunction::symmetric() const { return node_->symmetric; }
std::optional<std::size_t> SymmetricFunction::required_dim() const { return node_->required_dim; }

namespace {

void check_dimension(const Node& node, const CurvaturePoint& p) {
  if (node.required_dim && *node.required_dim != p.size()) {
    throw DomainError(node.name + " is defined for n = " + std::to_string(*node.required_dim) +
                      ", point has n = " + std::to_string(p.size()));
  }
}

}  // namespace

Jet2 SymmetricFunction::jet(const CurvaturePoint& p) const {
  check_dimension(*node_, p);
  const auto vars = Jet2::variables(p);
  return evaluate<Jet2>(*node_, std::span<const Jet2>(vars.data(), p.size()));
}

double SymmetricFunction::value(const CurvaturePoint& p) const {
  check_dimension(*node_, p);
  return evaluate<double>(*node_, p.values());
}

SymmetricFunction operator+(const SymmetricFunction& lhs, const SymmetricFunction& rhs) {
  return SymmetricFunction(make_binary(Op::kSum, lhs.node_, rhs.node_));
}

SymmetricFunction operator-(const SymmetricFunction& lhs, const SymmetricFunction& rhs) {
  return SymmetricFunction(make_binary(Op::kDifference, lhs.node_, rhs.node_));
}

SymmetricFunction operator*(const SymmetricFunction& lhs, const SymmetricFunction& rhs) {
  return SymmetricFunction(make_binary(Op::kProduct, lhs.node_, rhs.node_));
}

SymmetricFunction operator/(const SymmetricFunction& lhs, const SymmetricFunction& rhs) {
  return SymmetricFunction(make_binary(Op::kQuotient, lhs.node_, rhs.node_));
}

SymmetricFunction operator*(double lhs, const SymmetricFunction& rhs) {
  return SymmetricFunction::constant(lhs) * rhs;
}

SymmetricFunction pow(const SymmetricFunction& base, double exponent) {
  if (!std::isfinite(exponent)) throw InvalidArgument("exponent must be finite");
  auto node = std::make_shared<Node>();
  node->op = Op::kPower;
  node->param = exponent;
  node->lhs = base.node_;
  node->symmetric = base.node_->symmetric;
  node->required_dim = base.node_->required_dim;
  node->degree = {base.node_->degree.constant * exponent, base.node_->degree.per_dim * exponent};
  node->name = base.node_->name + "^" + format_number(exponent);
  return SymmetricFunction(std::move(node));
}

Jet2 eval_jet2(const SymmetricFunction& f, const CurvaturePoint& p) { return f.jet(p); }

}  // namespace pinchcert
