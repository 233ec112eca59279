import codecs
import os

from setuptools import setup, find_packages


def read(*parts):
    filename = os.path.join(os.path.dirname(__file__), *parts)
    with codecs.open(filename, encoding='utf-8') as fp:
        return fp.read()


VERSION = (0, 1, 0)
version = '.'.join(map(str, VERSION))

setup(
    name='idtnet',
    version=version,
    description='Information dissipation time of units in Ising networks: analytic, simulated and exact.',
    license='MIT',
    keywords=['ising', 'networks', 'information theory', 'mutual information', 'glauber'],
    long_description=read('README.md'),
    long_description_content_type="text/markdown",
    entry_points={
        'console_scripts': ['idtnet=idtnet.tools.cli:cli_execute']
    },

    install_requires=[
        'numpy>=1.22',
        'scipy>=1.9',
        'networkx>=2.8',
        'matplotlib>=3.5',
    ],

    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
    ],
    packages=find_packages(exclude=("tests",)),
)
