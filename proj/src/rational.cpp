#include "mutkit/rational.hpp"

#include "mutkit/error.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <utility>

namespace mutkit {

namespace {

using Int = boost::multiprecision::mpz_int;

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& input) {
  std::string s = input;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) throw Error(errc::validation, "empty number '" + input + "'");

  Rat value;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(errc::validation, "malformed rational '" + input + "'");
    Int d{den};
    if (d == 0) throw Error(errc::validation, "zero denominator in '" + input + "'");
    value = Rat(Int{num}, d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      throw Error(errc::validation, "malformed decimal '" + input + "'");
    Int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Int numerator = Int{whole} * scale + (frac.empty() ? Int{0} : Int{frac});
    value = Rat(numerator, scale);
  } else {
    if (!all_digits(s))
      throw Error(errc::validation, "malformed number '" + input + "'");
    value = Rat(Int{s});
  }
  return negative ? Rat(-value) : value;
}

std::string rat_to_string(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

double rat_to_double(const Rat& x) { return x.convert_to<double>(); }

Eigen::MatrixXd to_double(const RatMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(i, j) = rat_to_double(m(i, j));
  return out;
}

Eigen::VectorXd to_double(const RatVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = rat_to_double(v(i));
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<Eigen::Index> rref(RatMatrix& a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index i = row; i < rows; ++i)
      if (a(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row) a.row(p).swap(a.row(row));
    const Rat inv = Rat(1) / a(row, col);
    for (Eigen::Index j = col; j < cols; ++j) a(row, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rat f = a(i, col);
      for (Eigen::Index j = col; j < cols; ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int exact_rank(RatMatrix a) { return static_cast<int>(rref(a).size()); }

RatMatrix exact_kernel(const RatMatrix& a) {
  RatMatrix r = a;
  const std::vector<Eigen::Index> pivots = rref(r);
  const Eigen::Index cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (Eigen::Index c : pivots) is_pivot[c] = true;

  const Eigen::Index nullity = cols - static_cast<Eigen::Index>(pivots.size());
  RatMatrix kernel = RatMatrix::Zero(cols, nullity);
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    kernel(free, out) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      kernel(pivots[i], out) = -r(static_cast<Eigen::Index>(i), free);
    // scale so the first nonzero entry is 1
    for (Eigen::Index i = 0; i < cols; ++i) {
      if (kernel(i, out) != 0) {
        const Rat inv = Rat(1) / kernel(i, out);
        for (Eigen::Index j = i; j < cols; ++j) kernel(j, out) *= inv;
        break;
      }
    }
    ++out;
  }
  return kernel;
}

}  // namespace mutkit
