#pragma once

#include "icrm/classifier.hpp"
#include "icrm/config.hpp"
#include "icrm/corpus.hpp"
#include "icrm/dynamics.hpp"
#include "icrm/error.hpp"
#include "icrm/eval.hpp"
#include "icrm/metrics.hpp"
#include "icrm/nbayes.hpp"
#include "icrm/porter.hpp"
#include "icrm/report.hpp"
#include "icrm/rng.hpp"
#include "icrm/snapshot.hpp"
#include "icrm/stats.hpp"
#include "icrm/synthetic.hpp"
#include "icrm/textprep.hpp"
#include "icrm/types.hpp"
