#pragma once

#include "orthograd/common.hpp"
#include "orthograd/designs.hpp"
#include "orthograd/gradings.hpp"
#include "orthograd/intmat.hpp"
#include "orthograd/lattice.hpp"
#include "orthograd/liealg.hpp"
#include "orthograd/ratmat.hpp"
#include "orthograd/report.hpp"
#include "orthograd/rootsys.hpp"
#include "orthograd/unigroup.hpp"
