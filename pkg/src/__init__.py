# bariatric-ml: classifier x variable-group experiments
