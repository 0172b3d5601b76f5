#pragma once

#include "qdesign/bigint.hpp"
#include "qdesign/design.hpp"
#include "qdesign/enumeration.hpp"
#include "qdesign/gfq.hpp"
#include "qdesign/groups.hpp"
#include "qdesign/incidence.hpp"
#include "qdesign/matrix.hpp"
#include "qdesign/serialize.hpp"
#include "qdesign/solver.hpp"
#include "qdesign/subspace.hpp"
