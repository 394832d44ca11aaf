#pragma once

#include "dtori/error.hpp"
#include "dtori/rational.hpp"
#include "dtori/matrix.hpp"
#include "dtori/linalg.hpp"
#include "dtori/hnf.hpp"
#include "dtori/dirac.hpp"
#include "dtori/onn.hpp"
#include "dtori/word.hpp"
#include "dtori/poissonize.hpp"
#include "dtori/qtorus.hpp"
#include "dtori/orbit.hpp"
#include "dtori/verify.hpp"
#include "dtori/json.hpp"
