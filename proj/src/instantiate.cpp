// Explicit instantiations for both backends, so clients only compile the
// templates they specialise further.

#include "w1fl/w1fl.hpp"

namespace w1fl {

#define W1FL_INSTANTIATE(T)                                                                              \
  template SolutionPath<T> solve_path<T>(const DualInstance<T>&, const SolveOptions&);                  \
  template VerifyReport verify_path<T>(const DualInstance<T>&, const SolutionPath<T>&, std::size_t,     \
                                       const std::vector<PrimalOracle<T>>&, double);                    \
  template std::vector<T> solve_fixed_gamma_dp<T>(const Instance<T>&, const T&);                        \
  template std::vector<T> solve_fixed_gamma_qp<T>(const DualInstance<T>&, const T&);                    \
  template std::size_t sweep_segment_count<T>(const Instance<T>&, const T&, std::size_t);               \
  template std::vector<GammaInterval<T>> fused_interval_scan<T>(const Instance<T>&, std::size_t, const T&, \
                                                                std::size_t);                           \
  template std::size_t segment_count<T>(const SolutionPath<T>&, bool);                                  \
  template T constrained_to_penalized<T>(const SolutionPath<T>&, const T&);

W1FL_INSTANTIATE(double)
W1FL_INSTANTIATE(Rational)

#undef W1FL_INSTANTIATE

}  // namespace w1fl
