#pragma once

#include "lidqsd/errors.hpp"
#include "lidqsd/qcore.hpp"
#include "lidqsd/decomposition.hpp"
#include "lidqsd/discrimination.hpp"
#include "lidqsd/optics.hpp"
#include "lidqsd/sweeps.hpp"
#include "lidqsd/report.hpp"
