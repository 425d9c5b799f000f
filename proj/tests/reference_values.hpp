#pragma once

// Frozen outputs of tools/make_reference (adaptive oracle at rel 1e-7).
// Regenerate with that tool after any oracle change and compare before
// editing; the acceptance harness checks runtime values against this table
// at 1e-5 relative.

namespace wsq_test {

struct FrozenConstant {
  double lambda;
  double value;
};

inline constexpr FrozenConstant kGammaRef[] = {
    {0.25, 42.85391185968693},
    {0.50, 50.759944799617045},
    {0.75, 75.8441089875349},
};

inline constexpr FrozenConstant kGammaHatRef[] = {
    {0.25, 4.999945588704299},
    {0.50, 7.050988228955484},
    {0.75, 13.29433734147026},
};

}  // namespace wsq_test
