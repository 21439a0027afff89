from setuptools import setup

with open("README.md", 'r') as f:
    long_description = f.read()

setup(name='invariant-syzygies',
      version='1.0.0',
      description='Invariant rings of finite groups, their syzygies and degree bounds',
      license='MIT',
      long_description=long_description,
      scripts=[
          'syzygy_workbench.py',
      ],
      packages=[
          'invariant_syzygies',
      ],
      install_requires=[
          'cryptography',
          'aiofiles',
          'sympy',
      ],
      extras_require={
          'tests': ['pytest'],
      },
      zip_safe=False)
