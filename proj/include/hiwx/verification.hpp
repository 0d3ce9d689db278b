#pragma once

#include "hiwx/verification/bootstrap.hpp"
#include "hiwx/verification/contingency.hpp"
#include "hiwx/verification/correlation.hpp"
#include "hiwx/verification/histogram.hpp"
#include "hiwx/verification/reliability.hpp"
#include "hiwx/verification/roc.hpp"
#include "hiwx/verification/sample.hpp"
#include "hiwx/verification/value.hpp"
