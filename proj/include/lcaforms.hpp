#pragma once

#include "lcaforms/rational.hpp"
#include "lcaforms/group_core.hpp"
#include "lcaforms/distributions.hpp"
#include "lcaforms/linear_forms.hpp"
#include "lcaforms/fe_solver.hpp"
#include "lcaforms/rng.hpp"
#include "lcaforms/solenoid.hpp"
#include "lcaforms/realline.hpp"
#include "lcaforms/report.hpp"
#include "lcaforms/suites.hpp"
#include "lcaforms/cli.hpp"
