#pragma once

#include "gch/abrams.hpp"
#include "gch/error.hpp"
#include "gch/field.hpp"
#include "gch/graph.hpp"
#include "gch/homology.hpp"
#include "gch/invariants.hpp"
#include "gch/io.hpp"
#include "gch/module_theory.hpp"
#include "gch/smith.hpp"
#include "gch/sparse.hpp"
#include "gch/swiatkowski.hpp"
