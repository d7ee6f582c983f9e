#pragma once

#include "fibresum/abgroups.hpp"
#include "fibresum/engine.hpp"
#include "fibresum/errors.hpp"
#include "fibresum/forms.hpp"
#include "fibresum/integer.hpp"
#include "fibresum/intlat.hpp"
#include "fibresum/model.hpp"
#include "fibresum/model_json.hpp"
#include "fibresum/report.hpp"
