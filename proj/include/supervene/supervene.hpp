#pragma once

#include "supervene/closure.hpp"
#include "supervene/error.hpp"
#include "supervene/kb.hpp"
#include "supervene/oracle.hpp"
#include "supervene/property_model.hpp"
#include "supervene/report.hpp"
#include "supervene/selection_task.hpp"
#include "supervene/supervenience.hpp"
