#ifndef FBA_FBA_HPP
#define FBA_FBA_HPP

// Finite-blocklength asymptotics: channel-coding rate expansions through the
// skewness and fourth-order terms, exact non-asymptotic oracles to check them
// against, and the moderate/large-deviations machinery behind both.

#include "fba/bht.hpp"
#include "fba/bsc_bounds.hpp"
#include "fba/channel.hpp"
#include "fba/cumulants.hpp"
#include "fba/dmc.hpp"
#include "fba/errors.hpp"
#include "fba/expansion.hpp"
#include "fba/gaussian.hpp"
#include "fba/gaussian_tail.hpp"
#include "fba/geometry.hpp"
#include "fba/large_deviations.hpp"
#include "fba/llr_spectrum.hpp"
#include "fba/log_arith.hpp"
#include "fba/moderate_deviations.hpp"
#include "fba/moments.hpp"
#include "fba/root_solve.hpp"
#include "fba/special_functions.hpp"

#endif
