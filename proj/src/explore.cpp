#include "psrep/explore.hpp"

#include <cmath>
#include <numbers>

#include "psrep/parallel.hpp"

namespace psrep::explore {

Workspace::Workspace(const words::Presentation& p, int ball_radius, int table_radius, int depth) : pres_(p) {
  std::vector<words::PreciseMatrix> precise;
  if (!pres_.relators.empty()) precise = charlab::precise_anchor(pres_);
  ball_ = std::make_unique<words::CayleyBall>(pres_, ball_radius, table_radius,
                                              precise.empty() ? nullptr : &precise);
  ref_ = std::make_unique<primitives::ReferenceStructure>(charlab::fuchsian_anchor(pres_), *ball_, depth);
}

const std::vector<primitives::PrimitiveClass>& Workspace::primitives(int max_len, int depth, int threads,
                                                                     std::size_t cap) const {
  if (depth < 0) depth = ref_->depth();
  std::lock_guard<std::mutex> lock(mu_);
  const auto key = std::make_pair(max_len, depth);
  auto it = prims_.find(key);
  if (it == prims_.end()) {
    it = prims_.emplace(key, primitives::enumerate_primitives(pres_, *ref_, max_len, depth, cap, threads)).first;
  }
  return it->second;
}

hyp::cplx ScanWindow::point(int i, int j) const {
  const double u = (2.0 * i + 1.0) / (2.0 * nx), v = (2.0 * j + 1.0) / (2.0 * ny);
  return {re_lo * (1 - u) + re_hi * u, im_lo * (1 - v) + im_hi * v};
}

const char* cell_class_name(CellClass c) noexcept {
  switch (c) {
    case CellClass::Certified: return "Certified";
    case CellClass::Inconclusive: return "Inconclusive";
    case CellClass::Failed: return "Failed";
    case CellClass::BuildError: return "BuildError";
  }
  return "?";
}

CellClass cell_class(pscert::Verdict v) noexcept {
  switch (v) {
    case pscert::Verdict::Certified: return CellClass::Certified;
    case pscert::Verdict::Inconclusive: return CellClass::Inconclusive;
    case pscert::Verdict::Failed: return CellClass::Failed;
  }
  return CellClass::BuildError;
}

std::vector<ScanCell> scan(const Workspace& ws, const charlab::RepFamily& fam, const ScanParams& params) {
  const ScanWindow& win = params.window;
  if (win.nx < 1 || win.ny < 1) throw Error(ErrorCode::InvalidArgument, "grid resolution must be positive");
  if (win.cells() > kMaxScanCells) throw Error(ErrorCode::InvalidArgument, "grid exceeds 10^6 cells");
  if (!(win.re_lo <= win.re_hi) || !(win.im_lo <= win.im_hi)) {
    throw Error(ErrorCode::InvalidArgument, "empty parameter window");
  }
  if (fam.presentation().name() != ws.presentation().name()) {
    throw Error(ErrorCode::InvalidArgument, "family and workspace presentations differ");
  }
  const auto& prims = ws.primitives(params.max_len, params.depth, params.threads);
  pscert::CertParams cp = params.cert;
  cp.threads = 1;
  cp.max_len = params.max_len;
  cp.depth = params.depth < 0 ? ws.reference().depth() : params.depth;

  std::vector<ScanCell> cells(win.cells());
  parallel_for(cells.size(), params.threads, [&](std::size_t idx) {
    ScanCell& cell = cells[idx];
    cell.i = static_cast<int>(idx % win.nx);
    cell.j = static_cast<int>(idx / win.nx);
    cell.param = win.point(cell.i, cell.j);
    try {
      charlab::Representation rho = charlab::build_representation(fam, cell.param);
      cell.residual = rho.residual();
      const pscert::OrbitMap om(std::move(rho), {}, params.residual_bound);
      const pscert::CertResult res = pscert::certify(om, ws.ball(), prims, cp);
      cell.cls = cell_class(res.verdict);
      cell.min_gap = res.min_gap;
      cell.stride = res.stride;
      if (res.witness) cell.witness = words::to_string(ws.presentation(), *res.witness);
      cell.n_parabolic = res.parabolics.size();
      cell.r_emp = res.ratios.r_emp;
      cell.R_emp = res.ratios.R_emp;
    } catch (const Error& e) {
      cell.cls = CellClass::BuildError;
      cell.error = e.what();
    }
  });
  return cells;
}

CertifyRun certify(const Workspace& ws, const charlab::Representation& rho, int max_len, int depth,
                   const pscert::CertParams& params, const hyp::H3Point& basepoint, double residual_bound) {
  if (rho.presentation().name() != ws.presentation().name()) {
    throw Error(ErrorCode::InvalidArgument, "representation and workspace presentations differ");
  }
  CertifyRun run;
  run.prims = ws.primitives(max_len, depth, params.threads);
  pscert::CertParams cp = params;
  cp.max_len = max_len;
  cp.depth = depth < 0 ? ws.reference().depth() : depth;
  run.result = pscert::certify(pscert::OrbitMap(rho, basepoint, residual_bound), ws.ball(), run.prims, cp);
  return run;
}

namespace {

TunedPoint finish(const charlab::RepFamily& fam, const words::Word& gamma, double target, double param) {
  TunedPoint t;
  t.gamma = gamma;
  t.target = target;
  t.param = param;
  t.rho = charlab::build_representation(fam, param);
  t.trace_squared = charlab::trace_squared(t.rho, gamma);
  return t;
}

}  // namespace

TunedPoint tune_parabolic(const charlab::RepFamily& fam, const words::Word& gamma, double seed) {
  return finish(fam, gamma, 4.0, charlab::tune_trace_squared(fam, gamma, 4.0, seed));
}

TunedPoint tune_elliptic(const charlab::RepFamily& fam, const words::Word& gamma, int n, int k, double seed) {
  const double c = std::cos(k * std::numbers::pi / n);
  return finish(fam, gamma, 4.0 * c * c, charlab::find_elliptic_approx(fam, gamma, n, k, seed));
}

}  // namespace psrep::explore
