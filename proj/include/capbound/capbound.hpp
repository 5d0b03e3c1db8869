#pragma once

#include "capbound/bounds.hpp"
#include "capbound/common.hpp"
#include "capbound/gaussian.hpp"
#include "capbound/gdof.hpp"
#include "capbound/isd_channel.hpp"
#include "capbound/isd_json.hpp"
#include "capbound/prob_table.hpp"
#include "capbound/region.hpp"
#include "capbound/report.hpp"
