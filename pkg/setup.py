#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import absolute_import
from __future__ import print_function
from __future__ import unicode_literals

import io
import os

from setuptools import find_packages
from setuptools import setup

# Notice that we dare do this during setup.py -- this enforces a special
# restraint on module initialization, namely that it shouldn't do anything
# that depends on an installed environment.
import prevkit


def read_file(fname):
    with io.open(fname, encoding='utf-8') as handle:
        return handle.read()


def read_requirements(fname):
    """
    Pinned requirements from a pip requirements file, skipping comments and
    ``-r`` includes.
    """
    requirements = []
    for line in read_file(fname).splitlines():
        line = line.split('#', 1)[0].strip()
        if line and not line.startswith('-'):
            requirements.append(line)
    return requirements


dist_name = 'prevkit'

readme = read_file('README.rst')

here = os.path.dirname(os.path.realpath(__file__))

description = (
    "Prevalence estimation from imperfect diagnostic tests in finite "
    "populations, with a reproducible Monte Carlo study"
)

setup(
    name=dist_name,
    version=prevkit.__version__,
    description=description,
    long_description=readme,
    author='prevkit developers',
    packages=find_packages(exclude=['test', 'examples', 'examples.*']),
    entry_points={'console_scripts': ['prevkit = prevkit.utils.cli:main']},
    include_package_data=True,
    install_requires=read_requirements(os.path.join(here, 'requirements', 'base.txt')),
    tests_require=['pytest', 'mock', 'tox', 'flake8'],
    python_requires='>=3.6',
    license='MIT',
    zip_safe=False,
    keywords='prevalence sensitivity specificity finite population monte carlo',
    classifiers=[
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Development Status :: 4 - Beta',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.6',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
