#pragma once

#include "hiwx/calendar.hpp"
#include "hiwx/climatology.hpp"
#include "hiwx/dataset.hpp"
#include "hiwx/distributions.hpp"
#include "hiwx/error.hpp"
#include "hiwx/experiment.hpp"
#include "hiwx/indices.hpp"
#include "hiwx/synthgen.hpp"
#include "hiwx/verification.hpp"
