#pragma once

#include "ohara/angles.hpp"
#include "ohara/common.hpp"
#include "ohara/curve.hpp"
#include "ohara/energy.hpp"
#include "ohara/io.hpp"
#include "ohara/kernel.hpp"
#include "ohara/minimize.hpp"
#include "ohara/mobius.hpp"
#include "ohara/spectral.hpp"
#include "ohara/spline.hpp"
#include "ohara/version.hpp"
