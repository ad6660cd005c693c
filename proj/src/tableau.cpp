#include "ssp/tableau.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ssp/error.hpp"
#include "text_format.hpp"

namespace ssp {

TwoDerivativeTableau::TwoDerivativeTableau(Matrix a, Matrix ahat, std::vector<double> b,
                                           std::vector<double> bhat, std::string label)
    : a_(std::move(a)),
      ahat_(std::move(ahat)),
      b_(std::move(b)),
      bhat_(std::move(bhat)),
      label_(std::move(label)) {
  const std::size_t s = b_.size();
  if (s == 0) throw InvalidParameter("tableau needs at least one stage");
  if (bhat_.size() != s || a_.rows() != s || a_.cols() != s || ahat_.rows() != s ||
      ahat_.cols() != s)
    throw InvalidParameter("tableau arrays disagree on the stage count");
  if (!a_.is_strictly_lower() || !ahat_.is_strictly_lower())
    throw InvalidParameter("A and Ahat must be strictly lower triangular (explicit method)");
  const std::vector<double> ones(s, 1.0);
  c_ = a_ * ones;
  chat_ = ahat_ * ones;
}

bool TwoDerivativeTableau::is_first_derivative_only() const noexcept {
  const auto zero = [](double v) { return v == 0.0; };
  return std::all_of(bhat_.begin(), bhat_.end(), zero) &&
         std::all_of(ahat_.data().begin(), ahat_.data().end(), zero);
}

namespace {

using Vec = std::vector<double>;

Vec hadamard(const Vec& x, const Vec& y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
  return out;
}

Vec pow_elem(const Vec& x, int p) {
  Vec out(x.size(), 1.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int e = 0; e < p; ++e) out[i] *= x[i];
  return out;
}

double dot(const Vec& x, const Vec& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

Vec mul(const Matrix& m, const Vec& v) { return m * std::span<const double>(v); }

}  // namespace

OrderResidualReport order_residuals(const TwoDerivativeTableau& tab, int p) {
  if (p < 1 || p > 5) throw InvalidOrder("order must lie in 1..5, got " + std::to_string(p));

  const Matrix& A = tab.a();
  const Matrix& Ah = tab.ahat();
  const Vec& b = tab.b();
  const Vec& bh = tab.bhat();
  const Vec& c = tab.c();
  const Vec& ch = tab.chat();
  const Vec e(b.size(), 1.0);

  const auto c2 = pow_elem(c, 2);
  const auto c3 = pow_elem(c, 3);
  const auto c4 = pow_elem(c, 4);
  const auto Ac = mul(A, c);
  const auto Ach = mul(A, ch);
  const auto Ahc = mul(Ah, c);
  const auto Ac2 = mul(A, c2);
  const auto AAc = mul(A, Ac);
  const auto cAc = hadamard(c, Ac);
  const auto cch = hadamard(c, ch);

  OrderResidualReport rep;
  rep.order = p;
  auto add = [&rep](const char* id, double lhs, double rhs) {
    rep.residuals.push_back({id, lhs - rhs});
  };

  add("p1.1", dot(b, e), 1.0);
  if (p >= 2) add("p2.1", dot(b, c) + dot(bh, e), 1.0 / 2);
  if (p >= 3) {
    add("p3.1", dot(b, c2) + 2 * dot(bh, c), 1.0 / 3);
    add("p3.2", dot(b, Ac) + dot(b, ch) + dot(bh, c), 1.0 / 6);
  }
  if (p >= 4) {
    add("p4.1", dot(b, c3) + 3 * dot(bh, c2), 1.0 / 4);
    add("p4.2", dot(b, cAc) + dot(b, cch) + dot(bh, c2) + dot(bh, Ac) + dot(bh, ch), 1.0 / 8);
    add("p4.3", dot(b, Ac2) + 2 * dot(b, Ahc) + dot(bh, c2), 1.0 / 12);
    add("p4.4", dot(b, AAc) + dot(b, Ach) + dot(b, Ahc) + dot(bh, Ac) + dot(bh, ch), 1.0 / 24);
  }
  if (p >= 5) {
    const auto Ac3 = mul(A, c3);
    const auto Ahc2 = mul(Ah, c2);
    const auto AhAc = mul(Ah, Ac);
    const auto Ahch = mul(Ah, ch);
    const auto AAch = mul(A, Ach);
    const auto AAhc = mul(A, Ahc);
    const auto AAAc = mul(A, AAc);
    const auto AAc2 = mul(A, Ac2);

    add("p5.1", dot(b, c4) + 4 * dot(bh, c3), 1.0 / 5);
    add("p5.2",
        dot(b, hadamard(c2, Ac)) + dot(b, hadamard(c2, ch)) + dot(bh, c3) + 2 * dot(bh, cAc) +
            2 * dot(bh, cch),
        1.0 / 10);
    add("p5.3",
        dot(b, hadamard(c, Ac2)) + 2 * dot(b, hadamard(c, Ahc)) + dot(bh, c3) + dot(bh, Ac2) +
            2 * dot(bh, Ahc),
        1.0 / 15);
    add("p5.4",
        dot(b, hadamard(c, AAc)) + dot(b, hadamard(c, Ach)) + dot(b, hadamard(c, Ahc)) +
            dot(bh, cAc) + dot(bh, cch) + dot(bh, AAc) + dot(bh, Ach) + dot(bh, Ahc),
        1.0 / 30);
    add("p5.5",
        dot(b, hadamard(Ac, Ac)) + 2 * dot(b, hadamard(ch, Ac)) + dot(b, hadamard(ch, ch)) +
            2 * dot(bh, cAc) + 2 * dot(bh, cch),
        1.0 / 20);
    add("p5.6", dot(b, Ac3) + 3 * dot(b, Ahc2) + dot(bh, c3), 1.0 / 20);
    add("p5.7",
        dot(b, mul(A, cAc)) + dot(b, mul(A, cch)) + dot(b, Ahc2) + dot(b, AhAc) + dot(b, Ahch) +
            dot(bh, cAc) + dot(bh, cch),
        1.0 / 40);
    add("p5.8", dot(b, AAc2) + 2 * dot(b, AAhc) + dot(b, Ahc2) + dot(bh, Ac2) + 2 * dot(bh, Ahc),
        1.0 / 60);
    add("p5.9",
        dot(b, AAAc) + dot(b, AAch) + dot(b, AAhc) + dot(b, AhAc) + dot(b, Ahch) + dot(bh, AAc) +
            dot(bh, Ach) + dot(bh, Ahc),
        1.0 / 120);
  }

  for (const auto& r : rep.residuals)
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(r.value));
  return rep;
}

int design_order(const TwoDerivativeTableau& tab, double tol) {
  // order_residuals(p) already includes every lower block.
  int best = 0;
  for (int p = 1; p <= 5; ++p) {
    if (order_residuals(tab, p).max_abs_residual > tol) break;
    best = p;
  }
  return best;
}

std::string to_text(const TwoDerivativeTableau& tab) {
  std::ostringstream os;
  os << "label = " << tab.label() << '\n';
  os << "s = " << tab.stages() << '\n';
  os << "A = " << text::join_numbers(tab.a().data()) << '\n';
  os << "Ahat = " << text::join_numbers(tab.ahat().data()) << '\n';
  os << "b = " << text::join_numbers(tab.b()) << '\n';
  os << "bhat = " << text::join_numbers(tab.bhat()) << '\n';
  return os.str();
}

TwoDerivativeTableau tableau_from_text(std::string_view input) {
  const auto kv = text::parse_key_values(input);
  const auto need = [&kv](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("tableau text is missing key '" + key + "'");
    return it->second;
  };
  const auto s_values = text::parse_numbers(need("s"));
  if (s_values.size() != 1 || s_values[0] < 1 || s_values[0] != std::floor(s_values[0]))
    throw ParseError("tableau key 's' must be a positive integer");
  const auto s = static_cast<std::size_t>(s_values[0]);

  const auto read_matrix = [&](const std::string& key) {
    const auto v = text::parse_numbers(need(key));
    if (v.size() != s * s)
      throw ParseError("tableau key '" + key + "' needs " + std::to_string(s * s) + " numbers");
    Matrix m(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) m(i, j) = v[i * s + j];
    return m;
  };
  const auto read_vector = [&](const std::string& key) {
    auto v = text::parse_numbers(need(key));
    if (v.size() != s)
      throw ParseError("tableau key '" + key + "' needs " + std::to_string(s) + " numbers");
    return v;
  };

  const auto label_it = kv.find("label");
  return TwoDerivativeTableau(read_matrix("A"), read_matrix("Ahat"), read_vector("b"),
                              read_vector("bhat"), label_it == kv.end() ? "" : label_it->second);
}

TwoDerivativeTableau read_tableau(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read tableau file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return tableau_from_text(ss.str());
}

void write_tableau(const std::filesystem::path& path, const TwoDerivativeTableau& tab) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write tableau file " + path.string());
  out << to_text(tab);
}

}  // namespace ssp
