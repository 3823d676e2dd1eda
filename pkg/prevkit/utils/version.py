"""
We follow semantic versioning 2.0.0 according to
`semver.org <http://semver.org/>`__ but for Python distributions and in the
internal string representation in Python, you will find a
`PEP-440 <https://www.python.org/dev/peps/pep-0440/>`__ flavor.

 * ``1.1.0`` (Semver)  = ``1.1.0`` (PEP-440).
 * ``1.0.0-alpha1`` (Semver)  = ``1.0.0a1`` (PEP-440).

``prevkit.VERSION`` is a 5-tuple ``(major, minor, patch, release, serial)``
where ``release`` is one of ``alpha``, ``beta``, ``rc`` or ``final``. The 0th
alpha is a development release and maps to ``x.y.z.dev0``.

.. warning::
    Do not import anything from the rest of prevkit in this module, it's
    loaded by ``prevkit/__init__.py`` and by ``setup.py``.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import logging
from functools import lru_cache

logger = logging.getLogger(__name__)

ORDERED_VERSIONS = ('alpha', 'beta', 'rc', 'final')

PRERELEASE_MAPPING = {'alpha': 'a', 'beta': 'b', 'rc': 'rc'}


def get_complete_version(version=None):
    """
    :returns: A tuple of the version. If version argument is non-empty, then
              checks for correctness of the tuple provided.
    """
    if version is None:
        from prevkit import VERSION as version
    else:
        assert len(version) == 5
        assert version[3] in ORDERED_VERSIONS
        assert version[4] >= 0

    return version


def get_major_version(version=None):
    """
    :returns: String w/ first digit part of version tuple x.y.z
    """
    version = get_complete_version(version)
    return '.'.join(str(x) for x in version[:3])


def get_prerelease_version(version):
    """
    Maps ``(x, y, z, 'alpha', 0)`` to ``x.y.z.dev0`` and other pre-releases
    to ``x.y.zaN``, ``x.y.zbN`` or ``x.y.zrcN``.
    """
    major = get_major_version(version)
    if version[3] == 'alpha' and version[4] == 0:
        return major + '.dev0'
    return major + PRERELEASE_MAPPING[version[3]] + str(version[4])


@lru_cache()
def get_version(version=None):
    """
    Returns a PEP 440-compliant version number from VERSION.

    Within a numeric release ( 1.0.0 , 2.7.3 ), the following suffixes are
    permitted and MUST be ordered as shown:

    .devN, aN, bN, rcN, <no suffix>, .postN
    """
    version = get_complete_version(version)

    if version[3] != 'final':
        return get_prerelease_version(version)

    major = get_major_version(version)

    sub = ''
    if version[4] > 0:
        sub = ".post{}".format(version[4])

    return str(major + sub)
