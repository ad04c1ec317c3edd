#pragma once

#include "commham/classifier.hpp"
#include "commham/diagonalizer.hpp"
#include "commham/error.hpp"
#include "commham/gadgets.hpp"
#include "commham/lie.hpp"
#include "commham/pauli.hpp"
#include "commham/roots.hpp"
#include "commham/serialize.hpp"
#include "commham/simulator.hpp"
#include "commham/synthesizer.hpp"
