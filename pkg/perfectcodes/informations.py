__author__ = ["perfectcodes contributors"]
__version__ = "1.0.0"

# Bumped whenever a key in the JSON run report changes meaning or disappears.
REPORT_SCHEMA_VERSION = 1
