#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace orbihear::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Inner loops shared by the heat model, the fitter and the football oracle.
/// Each instruction set provides the same table; results agree to rounding.
struct KernelTable {
  /// out[j] = sum_l 1 / (4 sin^2((r_j + phase_l) / 2)) where the caller
  /// passes half-angle sines/cosines of r_j and of the phases.
  void (*rotation_sum)(std::span<const double> sin_half_r, std::span<const double> cos_half_r,
                       std::span<const double> sin_half_phase, std::span<const double> cos_half_phase,
                       std::span<double> out);
  /// sum_l weights[l] * exp(-t * lambdas[l])
  double (*weighted_exp_sum)(std::span<const double> weights, std::span<const double> lambdas,
                             double t);
  double (*dot)(std::span<const double> a, std::span<const double> b);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the library was built without AVX2 support.
const KernelTable* avx2_table() noexcept;

/// Instruction sets usable on this machine, scalar first.
std::vector<Isa> available();

/// Table for the best available ISA. ORBIHEAR_SIMD=scalar forces the
/// reference path.
const KernelTable& active() noexcept;
Isa active_isa() noexcept;
const KernelTable& table(Isa isa);

}  // namespace orbihear::kernels
