#pragma once

#include "scqsci/version.hpp"
#include "scqsci/error.hpp"

#include "scqsci/integrals/integral_set.hpp"
#include "scqsci/integrals/geometry.hpp"
#include "scqsci/integrals/sto3g.hpp"
#include "scqsci/integrals/rhf.hpp"
#include "scqsci/integrals/transform.hpp"
#include "scqsci/integrals/partition.hpp"
#include "scqsci/integrals/localize.hpp"
#include "scqsci/integrals/fcidump.hpp"
#include "scqsci/integrals/hydrogen.hpp"

#include "scqsci/determinants/determinant.hpp"
#include "scqsci/determinants/slater_condon.hpp"
#include "scqsci/determinants/symmetry.hpp"

#include "scqsci/hamsim/pauli.hpp"
#include "scqsci/hamsim/jordan_wigner.hpp"
#include "scqsci/hamsim/trotter.hpp"
#include "scqsci/hamsim/statevector.hpp"
#include "scqsci/hamsim/sampling.hpp"

#include "scqsci/cidiag/sparse.hpp"
#include "scqsci/cidiag/solver.hpp"
#include "scqsci/cidiag/full_ci.hpp"

#include "scqsci/subspace/split.hpp"
#include "scqsci/subspace/subspaces.hpp"
#include "scqsci/subspace/hci.hpp"

#include "scqsci/workflow/interaction.hpp"
#include "scqsci/workflow/inputs.hpp"
#include "scqsci/workflow/pipeline.hpp"
