# constants.py

from __future__ import annotations

from trivzero.__about__ import __appname__

# paths
OUTPUT_DIR_ENV = f'{__appname__.upper()}_OUTPUT_DIR'

# app
DESC = 'Special polynomials and trivial zeroes of characteristic-p zeta and L-functions.'

# fields and rings
SUPPORTED_R = (2, 3, 4, 5, 8, 9)
GENUS1_RELATION = 'T2^3+T2+1'
GENUS2_RELATION = 'T2^5+T2^3+1'
BASE_VARIABLE = 'T'
CURVE_VARIABLE = 'T2'

# truncation
DMAX_CUSHION = 3
PROFILE_MARGIN = 0

# scans
DEFAULT_JMAX_FQT = 1024
DEFAULT_JMAX_GENUS = 256
DEFAULT_JMAX_VADIC = 128
ANOMALY_WINDOW_START = 16
RETRY_ATTEMPTS = 3
RETRY_DELAY = 0.5

# csv
CSV_COLUMNS = ('j', 'l_p', 'l_r', 'v0', 'v1', 'nonclassical', 'np_slopes')
CSV_HEADER_PREFIX = '# '
