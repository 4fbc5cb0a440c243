#pragma once

#include "sympcurve/classify.hpp"
#include "sympcurve/curve.hpp"
#include "sympcurve/errors.hpp"
#include "sympcurve/frames.hpp"
#include "sympcurve/geodesic.hpp"
#include "sympcurve/group.hpp"
#include "sympcurve/io.hpp"
#include "sympcurve/jet.hpp"
#include "sympcurve/mat.hpp"
#include "sympcurve/osculating.hpp"
#include "sympcurve/portrait.hpp"
#include "sympcurve/quadrature.hpp"
#include "sympcurve/reconstruct.hpp"
#include "sympcurve/torus.hpp"
