import { Component, OnInit } from '@angular/core';

@Component({ selector: 'app-menu', template: '<nav></nav>' })
export class MenuComponent implements OnInit {
  open = false;

  ngOnInit() {
    document.addEventListener('click', this.close);
  }

  close = () => {
    this.open = false;
  };

  ngOnDestroy() {
    document.removeEventListener('click', this.close);
  }
}
