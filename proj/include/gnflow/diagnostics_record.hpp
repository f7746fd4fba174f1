#pragma once

namespace gnflow {

/// Per-snapshot conserved-quantity and regularity diagnostics. mass is the
/// integral of h - 1, momentum of h u, energy the Serre functional; sobolev_h
/// is |h - 1|_{H^sigma} and sobolev_u is |u|_{H^{sigma+1}} for the sigma
/// recorded alongside.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double min_phix = 0.0;
  double sobolev_h = 0.0;
  double sobolev_u = 0.0;
  double sigma = 0.0;
};

}  // namespace gnflow
