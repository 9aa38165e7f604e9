#pragma once

#include "auxgraph.hpp"
#include "circuit.hpp"
#include "detfpt.hpp"
#include "difftest.hpp"
#include "exact.hpp"
#include "generate.hpp"
#include "instance_io.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "randfpt.hpp"
#include "reduction.hpp"
#include "repset.hpp"
#include "setpoly.hpp"
#include "solve.hpp"
