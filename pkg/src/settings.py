import os
# Application Settings
APP_NAME = "dvbp"
APP_NAME_FULL = "Dynamic Vector Bin Packing Simulator"
SCRIPT_PATH = os.path.dirname(os.path.abspath(__file__))
BUILD_VERSION = "1.0.0"
# Development Settings
DEBUG = False
# Simulation Settings
DEFAULT_SEED = 0
DEFAULT_ORACLE_LIMIT = 16
# Exit Codes
EXIT_OK = 0
EXIT_AUDIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE_LIMIT = 3
# Configuration Settings
DEFAULT_CONFIG_FILENAME = "experiment.yaml"
DEFAULT_LOG_FILENAME = "dvbp.log"
DEFAULT_RESULTS_FILENAME = "results_d{d}_mu{mu}.csv"
DEFAULT_PLOTDATA_FILENAME = "plotdata.csv"
