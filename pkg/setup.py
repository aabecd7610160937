#!/usr/bin/env python
# -*- coding: utf-8 -*-


from setuptools import setup, find_packages

def readme():
    with open('README.md') as f:
        return f.read()

setup(name='SWARDS',
      version='0.1.0',
      description='spherical Wards clustering for data sets with arbitrary dissimilarity measures',
      long_description=readme(),
      long_description_content_type='text/markdown',
      license='',
      packages=find_packages(exclude=['tests']),
      install_requires=[
          'numpy>=1.17',
          'scipy',
          'argparse'
      ],
      extras_require={
          'test': ['pytest', 'scikit-learn']
      },
      entry_points={
          'console_scripts': ['swards = SWARDS.__main__:main']
      },
      classifiers=[
          'Programming Language :: Python :: 3',
          'License :: OSI Approved :: GNU Lesser General Public License v3 or later (LGPLv3+)',
          'Operating System :: OS Independent'
      ],
      python_requires='>=3.7',
      include_package_data=True,
      zip_safe=False)
