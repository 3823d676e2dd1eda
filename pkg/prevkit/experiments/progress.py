from __future__ import absolute_import, division, print_function, unicode_literals

from tqdm import tqdm


class ProgressTracker(object):
    """
    Progress over a known number of replications. Used as a context manager
    that hands out the update function::

        with ProgressTracker(total=5000, description="N=500") as update:
            update(250)
    """

    def __init__(self, total=100, description=None, enabled=True):

        # set default values
        self.progress = 0

        # store provided arguments
        self.total = total

        # disabled bars are no-ops
        self.progressbar = tqdm(total=total, desc=description, disable=not enabled, leave=False, unit="rep")

    def update_progress(self, increment=1):

        self.progressbar.update(increment)

        self.progress += increment

    @property
    def progress_fraction(self):
        return 0 if self.total == 0 else self.progress / float(self.total)

    def __enter__(self):
        return self.update_progress

    def __exit__(self, *exc_details):
        if self.progressbar is not None:
            self.progressbar.close()
