#include "psrep/pscert.hpp"

#include <algorithm>
#include <cmath>

#include "psrep/parallel.hpp"

namespace psrep::pscert {

using hyp::Isometry;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Images of the path letters, indexed by position in the period.
struct PathFrame {
  std::vector<Isometry> step;  // rho(period[k])
  int length = 0;

  PathFrame(const charlab::Representation& rho, const words::GeodesicPath& path) {
    length = path.period_length();
    if (length == 0) throw Error(ErrorCode::Domain, "identity has no axis");
    for (words::Letter l : path.period) step.push_back(rho.image({l}));
  }

  // rho(vertex(s))^-1 rho(vertex(s + k)) for 0 <= s < length.
  Isometry between(int s, int k) const {
    if (k < 0) {
      const int start = ((s + k) % length + length) % length;
      return between(start, -k).inverse();
    }
    Isometry m;
    for (int j = 0; j < k; ++j) m = m * step[(s + j) % length];
    return m;
  }

  // Change of frame sending the axis of the period read from vertex s to
  // (0, oo). Bisectors far along the path are then nearly concentric
  // hemispheres, whose inversive coordinates stay well conditioned. Identity
  // when the period has no axis or its endpoints nearly coincide.
  Isometry axis_frame(int s) const {
    const Isometry p = between(s, length);
    const hyp::IsometryTag tag = hyp::classify(p).tag;
    if (tag != hyp::IsometryTag::Hyperbolic && tag != hyp::IsometryTag::Loxodromic) return {};
    try {
      const hyp::GeodesicLine ax = hyp::axis(p);
      if (ax.attracting.at_infinity) return Isometry::from_entries(1.0, -ax.repelling.z, 0.0, 1.0);
      if (ax.repelling.at_infinity) return Isometry::from_entries(0.0, 1.0, -1.0, ax.attracting.z);
      return Isometry::from_entries(1.0, -ax.repelling.z, 1.0, -ax.attracting.z);
    } catch (const Error&) {
      return {};
    }
  }
};

}  // namespace

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::Failed: return "Failed";
  }
  return "?";
}

OrbitMap::OrbitMap(charlab::Representation rho, H3Point basepoint, double residual_bound)
    : rho_(std::move(rho)), x_(basepoint) {
  if (!(x_.t > 0)) throw Error(ErrorCode::InvalidArgument, "basepoint must have t > 0");
  if (!(rho_.residual() < residual_bound)) {
    throw Error(ErrorCode::Domain, "relator residual above the certification bound");
  }
}

PlaneCheck check_plane_criterion(const OrbitMap& om, const words::GeodesicPath& path,
                                 const PlaneCriterionParams& params, double degenerate_tol) {
  if (params.stride < 1) throw Error(ErrorCode::InvalidArgument, "stride must be positive");
  if (!(params.gap > 0)) throw Error(ErrorCode::InvalidArgument, "gap threshold must be positive");
  if (params.window < 1) throw Error(ErrorCode::InvalidArgument, "window must be positive");
  const PathFrame frame(om.representation(), path);
  const int i = params.stride;
  const H3Point& x = om.basepoint();
  PlaneCheck out;
  int argmin = 0;
  for (int s = 0; s < frame.length; ++s) {
    const Isometry frame_s = frame.axis_frame(s);
    std::array<H3Point, 4> q;
    for (int m = -1; m <= 2; ++m) q[m + 1] = hyp::apply(frame_s * frame.between(s, m * i), x);
    auto fail = [&](const char* why) {
      out.min_gap = std::min(out.min_gap, 0.0);
      out.fail_index = s;
      out.reason = why;
      return out;
    };
    hyp::BisectorPlane prev, mid, next;
    try {
      prev = hyp::perpendicular_bisector(q[0], q[1], degenerate_tol);
      mid = hyp::perpendicular_bisector(q[1], q[2], degenerate_tol);
      next = hyp::perpendicular_bisector(q[2], q[3], degenerate_tol);
    } catch (const Error&) {
      return fail("degenerate segment");
    }
    if (!hyp::planes_disjoint(prev, mid) || !hyp::planes_disjoint(mid, next) || !hyp::planes_disjoint(prev, next)) {
      return fail("planes meet");
    }
    if (!hyp::plane_separates(prev, mid, next)) {
      out.fail_index = s;
      out.reason = "not separating";
      out.min_gap = std::min(out.min_gap, hyp::plane_distance(mid, next));
      return out;
    }
    const double g = hyp::plane_distance(mid, next);
    if (g < out.min_gap) {
      out.min_gap = g;
      argmin = s;
    }
  }
  out.structural = true;
  out.pass = out.min_gap > params.gap;
  if (!out.pass) {
    out.fail_index = argmin;
    out.reason = "gap below threshold";
  }
  return out;
}

QGCheck brute_force_qg_check(const OrbitMap& om, const words::GeodesicPath& path, const QGConstants& k, int span) {
  if (span < 1) throw Error(ErrorCode::InvalidArgument, "span must be positive");
  if (span > path.last_index() - path.first_index()) {
    throw Error(ErrorCode::InvalidArgument, "span exceeds the materialized path");
  }
  if (!(k.K >= 1.0) || !(k.A >= 0.0)) throw Error(ErrorCode::InvalidArgument, "need K >= 1 and A >= 0");
  const PathFrame frame(om.representation(), path);
  const H3Point& x = om.basepoint();
  QGCheck out;
  double worst = kInf;
  for (int s = 0; s < frame.length; ++s) {
    Isometry m;
    for (int d = 1; d <= span; ++d) {
      m = m * frame.step[(s + d - 1) % frame.length];
      const double dist = hyp::h3_distance(x, hyp::apply(m, x));
      const double bound = d / k.K - k.A;
      if (dist - bound < worst) {
        worst = dist - bound;
        out.s = s;
        out.t = s + d;
        out.distance = dist;
        out.lower_bound = bound;
      }
    }
  }
  out.pass = worst >= 0.0;
  return out;
}

QGConstants derived_constants(int stride, double gap, double r_lip) {
  if (stride < 1 || !(gap > 0)) throw Error(ErrorCode::InvalidArgument, "need stride >= 1 and gap > 0");
  return {std::max(1.0, stride * r_lip / gap), 2.0 * stride * r_lip};
}

std::vector<ParabolicSuspect> detect_parabolic_primitives(const OrbitMap& om,
                                                          const std::vector<primitives::PrimitiveClass>& prims,
                                                          double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  std::vector<ParabolicSuspect> out;
  for (const auto& p : prims) {
    const Isometry m = om.representation().image(p.word);
    const hyp::cplx t2 = m.trace_squared();
    if (std::abs(t2 - 4.0) < tol && !m.is_identity(1e-9)) out.push_back({p.word, p.orientation, t2});
  }
  return out;
}

double lipschitz_constant(const OrbitMap& om) {
  double r = 0.0;
  for (const Isometry& g : om.representation().generators()) {
    r = std::max(r, hyp::h3_distance(om.basepoint(), hyp::apply(g, om.basepoint())));
  }
  return r;
}

RatioStats ratio_stats(const OrbitMap& om, const words::CayleyBall& ball,
                       const std::vector<primitives::PrimitiveClass>& prims) {
  RatioStats out;
  out.R_lip = lipschitz_constant(om);
  for (const auto& p : prims) {
    const int n = words::cayley_translation_length(ball, p.word);
    if (n == 0) throw Error(ErrorCode::Domain, "primitive class is trivial in the group");
    const double r = hyp::translation_length(om.representation().image(p.word)) / n;
    out.r_emp = std::isnan(out.r_emp) ? r : std::min(out.r_emp, r);
    out.R_emp = std::isnan(out.R_emp) ? r : std::max(out.R_emp, r);
  }
  return out;
}

CertResult certify(const OrbitMap& om, const words::CayleyBall& ball,
                   const std::vector<primitives::PrimitiveClass>& prims, const CertParams& params) {
  CertResult res;
  res.params = params;
  res.ratios = ratio_stats(om, ball, prims);
  res.parabolics = detect_parabolic_primitives(om, prims, params.parabolic_tol);
  if (prims.empty()) return res;

  std::vector<words::GeodesicPath> paths;
  try {
    for (const auto& p : prims) paths.push_back(words::quasi_axis(ball, p.word, params.plane.window));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Budget && e.code() != ErrorCode::Domain) throw;
    res.verdict = Verdict::Inconclusive;
    res.reason = e.what();
    res.min_gap = kInf;
    return res;
  }

  std::vector<int> strides;
  if (params.auto_tune) {
    for (int i = 1; i <= params.max_stride; ++i) strides.push_back(i);
  } else {
    strides.push_back(params.plane.stride);
  }
  if (strides.empty()) throw Error(ErrorCode::InvalidArgument, "no stride to try");

  struct Attempt {
    int stride = 0;
    std::vector<PlaneCheck> checks;
    bool structural = true;
    double min_gap = kInf;
  };
  auto attempt = [&](int i) {
    Attempt a;
    a.stride = i;
    a.checks.resize(prims.size());
    PlaneCriterionParams pp = params.plane;
    pp.stride = i;
    parallel_for(prims.size(), params.threads, [&](std::size_t k) { a.checks[k] = check_plane_criterion(om, paths[k], pp); });
    for (const auto& c : a.checks) {
      a.structural = a.structural && c.structural;
      a.min_gap = std::min(a.min_gap, c.min_gap);
    }
    return a;
  };

  std::optional<Attempt> passed, gap_only;
  Attempt last;
  for (int i : strides) {
    Attempt a = attempt(i);
    if (a.structural && a.min_gap > params.plane.gap) {
      passed = std::move(a);
      break;
    }
    if (a.structural && (!gap_only || a.min_gap > gap_only->min_gap)) gap_only = a;
    last = std::move(a);
  }
  const Attempt& chosen = passed ? *passed : gap_only ? *gap_only : last;
  res.stride = chosen.stride;
  res.min_gap = chosen.min_gap;
  for (std::size_t k = 0; k < prims.size(); ++k) {
    const PlaneCheck& c = chosen.checks[k];
    const Verdict v = c.pass ? Verdict::Certified : c.structural ? Verdict::Inconclusive : Verdict::Failed;
    res.classes.push_back({prims[k].word, prims[k].orientation, chosen.stride, c, v});
  }
  if (res.min_gap > 0 && std::isfinite(res.min_gap)) {
    res.qg = derived_constants(res.stride, res.min_gap, res.ratios.R_lip);
  } else {
    res.qg = {kInf, kInf};
  }

  if (!res.parabolics.empty()) {
    res.verdict = Verdict::Failed;
    res.witness = res.parabolics.front().word;
    res.reason = "parabolic primitive";
    return res;
  }
  if (passed) {
    res.verdict = Verdict::Certified;
    return res;
  }
  const Verdict want = gap_only ? Verdict::Inconclusive : Verdict::Failed;
  res.verdict = want;
  for (const auto& c : res.classes) {
    if (c.verdict == want) {
      res.witness = c.word;
      res.witness_index = c.check.fail_index;
      res.reason = c.check.reason;
      break;
    }
  }
  return res;
}

double wordset_distortion(const words::Automorphism& f, const words::CayleyBall& ball) {
  const int n = ball.presentation().rank();
  if (f.rank() != n) throw Error(ErrorCode::InvalidArgument, "automorphism rank does not match the presentation");
  std::vector<Word> ws;
  for (int i = 1; i <= n; ++i) ws.push_back({i});
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j) ws.push_back({i, j});
    }
  }
  double worst = 0.0;
  for (const Word& w : ws) {
    const int base = words::cayley_translation_length(ball, w);
    if (base == 0) continue;
    const int img = words::cayley_translation_length(ball, words::apply_automorphism(f, w));
    worst = std::max(worst, static_cast<double>(img) / base);
  }
  return worst;
}

}  // namespace psrep::pscert
