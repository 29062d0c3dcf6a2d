#pragma once

#include "gefp/errors.hpp"
#include "gefp/scalar.hpp"
#include "gefp/algebra/matrix.hpp"
#include "gefp/algebra/jet.hpp"
#include "gefp/algebra/poly.hpp"
#include "gefp/algebra/series.hpp"
#include "gefp/algebra/multipoly.hpp"
#include "gefp/params.hpp"
#include "gefp/young.hpp"
#include "gefp/result.hpp"
#include "gefp/oracle.hpp"
#include "gefp/ik.hpp"
#include "gefp/hfun.hpp"
#include "gefp/gefp.hpp"
