class ExportError(Exception):
    """Bad input data or an unusable encoder backend; maps to exit code 2."""
