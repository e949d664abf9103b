from setuptools import setup

REQUIRED=['networkx', 'ujson']

setup(name='endspace',
      version='0.1.0',
      description='Exact toolkit for the ends, edge-ends and directions of infinite graphs given by finite presentations.',
      keywords=['Graph', 'Ends', 'Infinite graphs', 'Line graph', 'Max flow'],
      classifiers=[],
      license='Apache2',
      packages=['endspace'],
      install_requires=REQUIRED,
      tests_require=['hypothesis'],
      entry_points={'console_scripts': ['endspace=endspace.cli:main']},
      test_suite='test',
      zip_safe=False)
