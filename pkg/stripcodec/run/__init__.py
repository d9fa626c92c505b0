import os
import linecache
from sys import exc_info
from os.path import abspath, dirname, relpath
from traceback import format_list, format_exception_only

def stacktrace(basedir=None):
    """print a clean traceback and optionally rewrite the paths relative to a directory"""

    # preprocess the stacktrace
    stack = []
    err_msg, frames = coredump()
    for frame in frames:
        # rewrite file paths relative to basedir (but only if it's shorter)
        if basedir:
            full = frame[0]
            rel = relpath(full, basedir)
            frame = (rel if len(rel) < len(full) else full,) + frame[1:]
        stack.append(frame)

    # return formatted traceback as a single string (with multiple newlines)
    if not stack:
        return "".join(err_msg)
    return "Traceback (most recent call last):\n%s" % "".join(format_list(stack) + err_msg)

def coredump():
    """Get a clean stacktrace for the most recently caught exception"""
    etype, value, tb = exc_info()
    return [format_exception_only(etype, value), extract_tb(tb)]

def extract_tb(tb):
    """Return a list of pre-processed entries from traceback."""
    frames = []
    while tb is not None:
        f = tb.tb_frame
        lineno = tb.tb_lineno
        co = f.f_code
        filename = co.co_filename
        linecache.checkcache(filename)
        line = linecache.getline(filename, lineno, f.f_globals)
        frames.append((filename, lineno, co.co_name, line.strip() or None))
        tb = tb.tb_next

    # omit the command line plumbing's own frames unless we're debugging
    if not os.getenv('STRIPCODEC_DEBUG'):
        rundir = abspath(dirname(__file__))
        trimmed = [frame for frame in frames if rundir not in frame[0]]
        return trimmed or frames
    return frames

# expose the sweep-runner object
from .sandbox import Sandbox
