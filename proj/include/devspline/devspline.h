#pragma once

#include "BSplineCurve.h"
#include "Developable.h"
#include "Interpolation.h"
#include "KnotVector.h"
#include "Polynomial.h"
#include "Verification.h"
#include "common.h"
#include "errors.h"
