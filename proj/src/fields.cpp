#include "regge/fields.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "regge/errors.hpp"
#include "regge/quadrature.hpp"

namespace regge {

using nlohmann::json;

namespace {

constexpr int kPanelNodes = 32;
constexpr double kPanelWidth = 0.0625;
constexpr double kGaugeTol = 1e-14;

}  // namespace

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::bump: return "bump";
    case ProfileKind::step: return "step";
    case ProfileKind::poly_spline: return "poly_spline";
    case ProfileKind::zero: return "zero";
  }
  return "zero";
}

ProfileKind profile_kind_from_string(const std::string& s) {
  if (s == "bump") return ProfileKind::bump;
  if (s == "step") return ProfileKind::step;
  if (s == "poly_spline") return ProfileKind::poly_spline;
  if (s == "zero") return ProfileKind::zero;
  throw ConfigError("unknown profile kind '" + s + "'");
}

RadialProfile::RadialProfile(ProfileKind kind, std::vector<double> params, double a, double b)
    : kind_(kind), params_(std::move(params)), a_(a), b_(b) {
  if (kind_ == ProfileKind::zero) {
    params_.clear();
    a_ = b_ = 0.0;
    return;
  }
  if (!(a_ >= 0.0) || !(b_ > a_)) {
    throw ConfigError("profile support must satisfy 0 <= a < b");
  }
  const std::size_t need = kind_ == ProfileKind::poly_spline ? 2 : 1;
  if (params_.size() < need || (kind_ != ProfileKind::poly_spline && params_.size() != 1)) {
    throw ConfigError("wrong number of parameters for profile kind " + to_string(kind_));
  }
  if (kind_ == ProfileKind::poly_spline) {
    // natural cubic spline second derivatives, equally spaced knots
    const std::size_t n = params_.size();
    const double h = (b_ - a_) / static_cast<double>(n - 1);
    m_.assign(n, 0.0);
    if (n > 2) {
      std::vector<double> c(n, 0.0), d(n, 0.0);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double rhs = 6.0 * (params_[i + 1] - 2.0 * params_[i] + params_[i - 1]) / (h * h);
        const double denom = 4.0 - (i > 1 ? c[i - 1] : 0.0);
        c[i] = 1.0 / denom;
        d[i] = (rhs - (i > 1 ? d[i - 1] : 0.0)) / denom;
      }
      for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = d[i] - c[i] * m_[i + 1];
        if (i == 1) break;
      }
    }
  }
}

RadialProfile RadialProfile::bump(double a, double b, double amplitude) {
  return {ProfileKind::bump, {amplitude}, a, b};
}

RadialProfile RadialProfile::step(double a, double b, double height) {
  return {ProfileKind::step, {height}, a, b};
}

RadialProfile RadialProfile::spline(double a, double b, std::vector<double> knots) {
  return {ProfileKind::poly_spline, std::move(knots), a, b};
}

double RadialProfile::operator()(double r) const {
  if (kind_ == ProfileKind::zero || r < a_ || r > b_) return 0.0;
  switch (kind_) {
    case ProfileKind::bump: {
      const double t = (2.0 * r - a_ - b_) / (b_ - a_);
      const double s = 1.0 - t * t;
      if (s <= 0.0) return 0.0;
      return params_[0] * std::exp(1.0 - 1.0 / s);
    }
    case ProfileKind::step:
      return params_[0];
    case ProfileKind::poly_spline: {
      const std::size_t n = params_.size();
      const double h = (b_ - a_) / static_cast<double>(n - 1);
      std::size_t i = std::min(static_cast<std::size_t>((r - a_) / h), n - 2);
      const double x0 = a_ + h * static_cast<double>(i);
      const double t = (r - x0) / h, u = 1.0 - t;
      return u * params_[i] + t * params_[i + 1] +
             h * h / 6.0 * ((u * u * u - u) * m_[i] + (t * t * t - t) * m_[i + 1]);
    }
    case ProfileKind::zero:
      break;
  }
  return 0.0;
}

Smoothness RadialProfile::smoothness() const {
  return kind_ == ProfileKind::bump || kind_ == ProfileKind::zero
             ? Smoothness::smooth
             : Smoothness::piecewise_continuous;
}

bool RadialProfile::is_zero() const {
  if (kind_ == ProfileKind::zero) return true;
  return std::all_of(params_.begin(), params_.end(), [](double p) { return p == 0.0; });
}

std::vector<double> RadialProfile::breakpoints() const {
  if (kind_ == ProfileKind::zero) return {};
  if (kind_ == ProfileKind::poly_spline) {
    std::vector<double> pts;
    const std::size_t n = params_.size();
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(a_ + (b_ - a_) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    pts.back() = b_;
    return pts;
  }
  return {a_, b_};
}

RadialProfile RadialProfile::scaled(double c) const {
  if (kind_ == ProfileKind::zero) return *this;
  std::vector<double> p = params_;
  for (double& x : p) x *= c;
  return {kind_, std::move(p), a_, b_};
}

json RadialProfile::to_json() const {
  json j;
  j["kind"] = to_string(kind_);
  j["params"] = params_;
  j["support"] = {a_, b_};
  return j;
}

Medium Medium::mirrored() const {
  Medium m = *this;
  m.b = b.scaled(-1.0);
  return m;
}

json Medium::to_json() const {
  return {{"r0", r0}, {"R", R}, {"V", V.to_json()}, {"B", b.to_json()}};
}

double flux_of(const RadialProfile& b, double R) {
  if (b.kind() == ProfileKind::zero) return 0.0;
  const double hi = std::min(R, b.support_hi());
  const double lo = std::min(b.support_lo(), hi);
  return quad::integrate_piecewise([&](double t) { return t * b(t); }, lo, hi, b.breakpoints(),
                                   kGaugeTol);
}

namespace {

RadialProfile profile_from_json(const json& j, const char* name) {
  if (!j.is_object()) throw ConfigError(std::string("profile '") + name + "' must be an object");
  const ProfileKind kind = profile_kind_from_string(j.value("kind", std::string("zero")));
  if (kind == ProfileKind::zero) return RadialProfile::zero();
  if (!j.contains("params") || !j["params"].is_array()) {
    throw ConfigError(std::string("profile '") + name + "' needs a params array");
  }
  if (!j.contains("support") || !j["support"].is_array() || j["support"].size() != 2) {
    throw ConfigError(std::string("profile '") + name + "' needs support [a, b]");
  }
  std::vector<double> params = j["params"].get<std::vector<double>>();
  return {kind, std::move(params), j["support"][0].get<double>(), j["support"][1].get<double>()};
}

}  // namespace

Medium medium_from_json(const json& j) {
  try {
    Medium m;
    if (!j.is_object()) throw ConfigError("medium must be a JSON object");
    if (!j.contains("r0") || !j.contains("R")) throw ConfigError("medium needs r0 and R");
    m.r0 = j["r0"].get<double>();
    m.R = j["R"].get<double>();
    if (!(m.r0 > 0.0) || !(m.R > 0.0)) throw ConfigError("r0 and R must be positive");
    if (j.contains("V")) m.V = profile_from_json(j["V"], "V");
    if (j.contains("B")) {
      m.b = profile_from_json(j["B"], "B");
      if (j["B"].contains("flux_over_2pi")) {
        const double target = j["B"]["flux_over_2pi"].get<double>();
        const double unit = flux_of(m.b, m.R);
        if (unit == 0.0) throw ConfigError("B profile has zero flux and cannot be rescaled");
        m.b = m.b.scaled(target / unit);
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed medium: ") + e.what());
  }
}

Medium load_medium(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open medium file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
  return medium_from_json(j);
}

ValidationReport validate_class_C(const Medium& m) {
  ValidationReport rep;
  auto fail = [&](std::string why) {
    rep.pass = false;
    rep.reasons.push_back(std::move(why));
  };
  if (!(m.r0 > 0.0)) fail("r0 must be positive");
  if (!(m.R > 0.0)) fail("R must be positive");
  for (const auto* p : {&m.V, &m.b}) {
    const char* name = p == &m.V ? "V" : "B";
    if (p->kind() != ProfileKind::zero && p->support_hi() > m.R) {
      fail(std::string(name) + " support exceeds [0, R]");
    }
  }
  if (m.b.smoothness() != Smoothness::smooth) fail("B must be smooth (bump or zero profile)");
  return rep;
}

double GaugeData::operator()(double r) const {
  if (r >= R_ || r >= hi_) return flux_;
  if (r <= lo_ || panels_.empty()) return 0.0;
  auto it = std::upper_bound(panels_.begin(), panels_.end(), r,
                             [](double x, const Panel& p) { return x < p.hi; });
  if (it == panels_.end()) return flux_;
  const Panel& p = *it;
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < p.x.size(); ++j) {
    const double d = r - p.x[j];
    if (d == 0.0) return p.f[j];
    const double t = w_[j] / d;
    num += t * p.f[j];
    den += t;
  }
  return num / den;
}

GaugeData build_gauge(const Medium& m, int quad_points) {
  if (quad_points < 64) throw ConfigError("build_gauge: quad_points must be >= 64");
  if (m.b.kind() != ProfileKind::zero && m.b.support_hi() > m.R) {
    throw ConfigError("build_gauge: b must be supported in [0, R]");
  }
  GaugeData g;
  g.R_ = m.R;
  if (m.b.is_zero()) return g;
  g.lo_ = m.b.support_lo();
  g.hi_ = m.b.support_hi();

  std::vector<double> cuts{0.0, m.R};
  for (double x : m.b.breakpoints()) {
    if (x > 0.0 && x < m.R) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const int n = kPanelNodes;
  g.w_.resize(n);
  for (int j = 0; j < n; ++j) g.w_[j] = (j % 2 ? -1.0 : 1.0) * (j == 0 || j == n - 1 ? 0.5 : 1.0);

  auto integrand = [&](double t) { return t * m.b(t); };
  double acc = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const int pieces = std::max(1, static_cast<int>(std::ceil((cuts[c + 1] - cuts[c]) / kPanelWidth)));
    for (int k = 0; k < pieces; ++k) {
      GaugeData::Panel p;
      p.lo = cuts[c] + (cuts[c + 1] - cuts[c]) * k / pieces;
      p.hi = k + 1 == pieces ? cuts[c + 1] : cuts[c] + (cuts[c + 1] - cuts[c]) * (k + 1) / pieces;
      p.x.resize(n);
      p.f.resize(n);
      double prev_x = p.lo, prev_f = acc;
      for (int j = 0; j < n; ++j) {
        // ascending Lobatto points
        const double t = -std::cos(std::numbers::pi * j / (n - 1));
        const double x = j == 0 ? p.lo : (j == n - 1 ? p.hi : 0.5 * (p.lo + p.hi) + 0.5 * (p.hi - p.lo) * t);
        prev_f += quad::integrate(integrand, prev_x, x, kGaugeTol, quad_points);
        p.x[j] = x;
        p.f[j] = prev_f;
        prev_x = x;
      }
      acc = p.f.back();
      g.panels_.push_back(std::move(p));
    }
  }
  g.flux_ = acc;
  return g;
}

EffectivePotential::EffectivePotential(Medium m, GaugeData g)
    : medium_(std::move(m)), gauge_(std::move(g)) {}

void EffectivePotential::parts(double r, double& q0, double& w) const {
  if (r >= medium_.R) {
    q0 = 0.0;
    w = 0.0;
    return;
  }
  const double gr = gauge_(r), gR = gauge_.flux_over_2pi();
  const double inv = 1.0 / (r * r);
  q0 = (gr - gR) * (gr + gR) * inv + medium_.V(r);
  w = -2.0 * (gr - gR) * inv;
}

double EffectivePotential::q0(double r) const {
  double a, b;
  parts(r, a, b);
  return a;
}

double EffectivePotential::w(double r) const {
  double a, b;
  parts(r, a, b);
  return b;
}

cplx EffectivePotential::operator()(cplx nu, double r) const {
  if (r >= medium_.R) return 0.0;
  double a, b;
  parts(r, a, b);
  return a + nu * b;
}

std::vector<double> EffectivePotential::breakpoints() const {
  std::vector<double> pts;
  for (const auto* p : {&medium_.V, &medium_.b}) {
    for (double x : p->breakpoints()) {
      if (x > medium_.r0 && x < medium_.R) pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

bool EffectivePotential::trivial() const {
  const double r0 = medium_.r0;
  if (medium_.R <= r0) return true;
  const auto inside = [&](const RadialProfile& p) {
    return p.is_zero() || p.support_hi() <= r0;
  };
  return inside(medium_.V) && inside(medium_.b);
}

}  // namespace regge
